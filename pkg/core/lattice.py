import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import product
from operator import and_
from random import Random

import networkx as nx
import numpy as np

from core.errors import (
    InvariantViolation,
    NotNested,
    NotOrthogonal,
    NotSelfBicommutant,
    ResourceLimit,
    SubgroupNotInTheory,
)
from core.permutations import Subgroup, mask_indices


def require_owned(theory, *subgroups):
    for sub in subgroups:
        if not theory.owns(sub):
            raise SubgroupNotInTheory("Subgroup does not belong to the theory's group")


def _commutant_mask(theory, mask):
    masks = theory.centralizer_masks
    return theory.memo(('commutant', mask),
                       lambda: reduce(and_, (masks[i] for i in mask_indices(mask)), theory.group.full_mask))


def commutant(theory, H):
    """H' : every element of the theory's group commuting with all of ``H``"""
    require_owned(theory, H)
    return Subgroup(theory.group, _commutant_mask(theory, H.mask))


def bicommutant(theory, H):
    return commutant(theory, commutant(theory, H))


def is_self_bicommutant(theory, H):
    return bicommutant(theory, H) == H


def require_self_bicommutant(theory, *subgroups):
    for sub in subgroups:
        if not is_self_bicommutant(theory, sub):
            raise NotSelfBicommutant(f"Subgroup of order {sub.order} is not self-bicommutant")


@dataclass(frozen=True, eq=False)
class SbcLattice:
    """The bounded lattice of self-bicommutant subgroups of a theory.

    Nodes are sorted by order, then by their canonical member list, so node 0 is
    ``{1}`` and the last node is the whole group. Node ids index every table.

    Attributes:
        theory (GlobalTheory): the owning theory.
        nodes (tuple[Subgroup, ...]): the self-bicommutant subgroups.
        commutant_map (tuple[int, ...]): node id of each node's commutant.
        inclusion (np.ndarray): ``inclusion[i, j]`` is true iff node i is contained in node j.
    """

    theory: object
    nodes: tuple
    commutant_map: tuple
    inclusion: np.ndarray

    @cached_property
    def index_of(self):
        return {node.mask: i for i, node in enumerate(self.nodes)}

    def __len__(self):
        return len(self.nodes)

    @property
    def bottom(self):
        return 0

    @property
    def top(self):
        return len(self.nodes) - 1

    def node_id(self, H):
        try:
            return self.index_of[H.mask]
        except KeyError:
            raise NotSelfBicommutant(f"Subgroup of order {H.order} is not a lattice node") from None

    def meet_id(self, i, j):
        return self.index_of[self.nodes[i].mask & self.nodes[j].mask]

    def join_id(self, i, j):
        cm = self.commutant_map
        return cm[self.meet_id(cm[i], cm[j])]

    @cached_property
    def graph(self):
        """Strict inclusion order as a networkx digraph, edges pointing from smaller to larger"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        rows, cols = np.nonzero(self.inclusion)
        graph.add_edges_from((i, j) for i, j in zip(rows.tolist(), cols.tolist()) if i != j)
        return graph

    @cached_property
    def hasse(self):
        """Covering pairs ``(smaller, larger)`` in canonical order"""
        return sorted(nx.transitive_reduction(self.graph).edges())


def enumerate_self_bicommutant(theory):
    """
    Enumerates every self-bicommutant subgroup of the theory.

    Self-bicommutant subgroups are exactly the commutants, and a commutant is an
    intersection of element centralizers, so the nodes are the intersection-closure
    of the element centralizers together with the whole group.

    Returns:
        SbcLattice: nodes, commutant pairing and inclusion table.

    Raises:
        ResourceLimit: if the closure exceeds ``max_lattice_nodes``.
    """
    cap = theory.limits.max_lattice_nodes
    generators = sorted(set(theory.centralizer_masks))
    found = set(generators) | {theory.group.full_mask}
    frontier = set(found)
    while frontier:
        fresh = {a & b for a in frontier for b in generators} - found
        found |= fresh
        if len(found) > cap:
            raise ResourceLimit(f"Lattice exceeds max_lattice_nodes={cap}")
        frontier = fresh

    nodes = sorted((Subgroup(theory.group, mask) for mask in found), key=lambda n: (n.order, n.indices))
    index_of = {node.mask: i for i, node in enumerate(nodes)}
    try:
        commutant_map = tuple(index_of[_commutant_mask(theory, node.mask)] for node in nodes)
    except KeyError:
        raise InvariantViolation("Commutant of a lattice node is not a lattice node") from None

    inclusion = np.array([[a.mask & ~b.mask == 0 for b in nodes] for a in nodes], dtype=bool)
    lattice = SbcLattice(theory, tuple(nodes), commutant_map, inclusion)
    logging.info(f"Self-bicommutant lattice: {len(nodes)} nodes")
    return lattice


def join(theory, H, K):
    """H v K := (H' n K')'"""
    require_self_bicommutant(theory, H, K)
    return commutant(theory, commutant(theory, H) & commutant(theory, K))


def meet(theory, H, K):
    require_self_bicommutant(theory, H, K)
    return H & K


def is_orthogonal(theory, H, K):
    """
    True iff every element of ``K`` commutes with every element of ``H``.

    Both inclusions ``K <= H'`` and ``H <= K'`` are computed; they must agree.
    """
    forward = K <= commutant(theory, H)
    backward = H <= commutant(theory, K)
    if forward != backward:
        raise InvariantViolation("Orthogonality is not symmetric")
    return forward


def is_orthocomplemented(theory, H):
    return (H & commutant(theory, H)).is_trivial


def is_orthocomplementary(theory, H, K):
    """Orthogonal, and each of ``H``, ``K`` is the other's commutant inside ``H v K``"""
    if not is_orthogonal(theory, H, K):
        return False
    top = join(theory, H, K)
    return K == commutant(theory, H) & top and H == commutant(theory, K) & top


def check_orthomodular(theory, H, K):
    """Checks ``H v (H' ^ K) == K`` for nested ``H <= K``"""
    require_self_bicommutant(theory, H, K)
    if not H <= K:
        raise NotNested("Orthomodular law needs H <= K")
    return join(theory, H, commutant(theory, H) & K) == K


def relative_commutant(theory, H, P):
    """The commutant of ``H`` within ``P``: ``H' ^ P``"""
    require_self_bicommutant(theory, H, P)
    if not H <= P:
        raise NotNested("Relative commutant needs H <= P")
    return commutant(theory, H) & P


def centre_of(theory, H):
    """Z(H) = H ^ H'"""
    return H & commutant(theory, H)


def tensor_element(h, k):
    return h * k


def _right_closed(group, mask, sub):
    members = Subgroup(group, mask).array
    for row in sub.array:
        for image in members[:, row].tolist():
            if not mask >> group._index[tuple(image)] & 1:
                return False
    return True


def product_set(theory, H, K):
    """
    Returns ``H.K = {hk}`` for orthogonal ``H``, ``K``.

    Returns:
        Subgroup: the product, verified to be closed.

    Raises:
        NotOrthogonal: if some element of ``H`` fails to commute with some element of ``K``.
    """
    require_owned(theory, H, K)
    if not is_orthogonal(theory, H, K):
        raise NotOrthogonal("Product set needs orthogonal subgroups")
    group = theory.group
    products = H.array[:, K.array].reshape(-1, group.degree)
    mask = 0
    for row in np.unique(products, axis=0).tolist():
        mask |= 1 << group._index[tuple(row)]
    if not (_right_closed(group, mask, H) and _right_closed(group, mask, K)):
        raise InvariantViolation("Product of orthogonal subgroups is not a subgroup")
    return Subgroup(group, mask)


def distributivity_violations(lattice):
    """
    Reports node triples failing ``H ^ (K v L) == (H ^ K) v (H ^ L)``.

    Triples are exhaustive up to ``exhaustive_limit`` and sampled (``sample_size``,
    seeded) beyond it. Failures are data, not errors.
    """
    limits = lattice.theory.limits
    n = len(lattice)
    if n ** 3 <= limits.exhaustive_limit:
        triples = product(range(n), repeat=3)
    else:
        rng = Random(limits.seed)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(limits.sample_size))

    violations = []
    for h, k, l in triples:
        left = lattice.meet_id(h, lattice.join_id(k, l))
        right = lattice.join_id(lattice.meet_id(h, k), lattice.meet_id(h, l))
        if left != right:
            violations.append({'property': 'distributive', 'witness': {'H': h, 'K': k, 'L': l}})
    if violations:
        logging.info(f"Lattice is not distributive: {len(violations)} failing triples")
    return violations


def lattice_export(lattice):
    """Serialisable view: nodes with ids, Hasse edges and commutant pairs"""
    theory = lattice.theory
    nodes = []
    for i, node in enumerate(lattice.nodes):
        nodes.append({
            'id': i,
            'order': node.order,
            'commutant': lattice.commutant_map[i],
            'orthocomplemented': is_orthocomplemented(theory, node),
            'elements': [p.to_list() for p in node.members],
        })
    pairs = sorted({tuple(sorted((i, j))) for i, j in enumerate(lattice.commutant_map)})
    return {
        'degree': theory.degree,
        'group_order': theory.group.order,
        'nodes': nodes,
        'hasse': [list(edge) for edge in lattice.hasse],
        'commutant_pairs': [list(pair) for pair in pairs],
    }

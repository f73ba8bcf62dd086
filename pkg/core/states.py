import logging
from dataclasses import dataclass, field

import numpy as np

from core.errors import ElementNotInOwner, InvariantViolation, NotNested, NotPure, PointOutOfRange
from core.lattice import commutant, require_self_bicommutant
from core.permutations import Subgroup, lift_flags


@dataclass(frozen=True)
class LocalState:
    """An orbit of ``owner'`` on the points, i.e. the restriction of a global state to ``owner``.

    Attributes:
        owner (Subgroup): the self-bicommutant subgroup the state belongs to.
        points (tuple[int, ...]): the orbit, sorted.
    """

    owner: Subgroup
    points: tuple[int, ...]

    @property
    def representative(self):
        return self.points[0]

    def __contains__(self, point):
        return point in self.points

    def to_dict(self, owner_id=None):
        data = {'points': list(self.points)}
        if owner_id is not None:
            data = {'owner_id': owner_id, **data}
        return data


@dataclass(frozen=True)
class Factorisation:
    """Stabilizer data of the joint action of two orthogonal subgroups at one global state.

    Attributes:
        local_h (Subgroup): elements of ``H`` fixing the restriction of the state to ``H``.
        local_k (Subgroup): elements of ``K`` fixing the restriction of the state to ``K``.
        joint_order (int): number of pairs ``(h, k)`` fixing the state (or its restriction to the ambient subgroup).
    """

    local_h: Subgroup
    local_k: Subgroup
    joint_order: int

    @property
    def product_order(self):
        return self.local_h.order * self.local_k.order

    @property
    def factorises(self):
        return self.joint_order == self.product_order


@dataclass(frozen=True)
class PurityVerdict:
    """Outcome of the product-state test for one global state.

    ``witness_stabilizers`` holds the stabilizer of the local state in ``H``, the
    stabilizer of the complementary local state in ``H'`` and the stabilizer of the
    global state in ``H.H'``. ``stabilizer_equation`` is the weaker test
    ``Stab_{H.H'}(psi) == Stab_H(psi) . Stab_{H'}(psi)``.
    """

    state: LocalState
    pure: bool
    witness_stabilizers: tuple = field(repr=False)
    joint_order: int = 0
    stabilizer_equation: bool = True

    @property
    def criteria_agree(self):
        return self.pure == self.stabilizer_equation


def _check_point(theory, point):
    if not 0 <= point < theory.degree:
        raise PointOutOfRange(f"Point {point} outside 0..{theory.degree - 1}")


def restrict(theory, H, psi):
    """
    Restricts the global state ``psi`` to ``H``.

    Returns:
        LocalState: the orbit ``H' psi`` owned by ``H``.
    """
    _check_point(theory, psi)
    require_self_bicommutant(theory, H)
    return LocalState(H, commutant(theory, H).orbit(psi))


def local_states(theory, H):
    """States(H): every orbit of ``H'``, in order of smallest point"""
    require_self_bicommutant(theory, H)
    return [LocalState(H, orbit) for orbit in commutant(theory, H).orbits()]


def act_local(theory, H, h, state):
    """
    Applies ``h`` in ``H`` to a local state of ``H``.

    Raises:
        ElementNotInOwner: if ``h`` is not in ``H`` or ``state`` is not owned by ``H``.
    """
    if h not in H:
        raise ElementNotInOwner(f"{h} is not an element of the owning subgroup")
    if state.owner != H:
        raise ElementNotInOwner("Local state is owned by a different subgroup")
    image = tuple(sorted(h(p) for p in state.points))
    moved = restrict(theory, H, h(state.representative))
    if moved.points != image:
        raise InvariantViolation(f"Local action of {h} is not well defined on {list(state.points)}")
    return moved


def iterated_restrict(theory, K, state):
    """
    Restricts a local state of ``H`` further to ``K <= H``.

    Raises:
        NotNested: if ``K`` is not contained in the owner of ``state``.
    """
    if not K <= state.owner:
        raise NotNested("Iterated restriction needs K contained in the owner")
    result = restrict(theory, K, state.representative)
    labels = commutant(theory, K).orbit_labels
    if len(set(labels[list(state.points)].tolist())) != 1:
        raise InvariantViolation("Iterated restriction depends on the representative")
    return result


def _joint_images(theory, h_mask, k_mask):
    """``images[i, j]`` is the image row of ``h_i k_j``"""
    group = theory.group
    return theory.memo(('joint_images', h_mask, k_mask),
                       lambda: Subgroup(group, h_mask).array[:, Subgroup(group, k_mask).array])


def factorisation(theory, H, K, psi, ambient=None):
    """
    Compares the joint stabilizer of ``H x K`` at ``psi`` with the product of the local ones.

    The joint stabilizer always embeds in the product, so the action factorises
    exactly when the orders agree.

    Args:
        theory (GlobalTheory): the theory.
        H (Subgroup): self-bicommutant subgroup.
        K (Subgroup): self-bicommutant subgroup orthogonal to ``H``.
        psi (int): global state.
        ambient (Subgroup | None): when given, the joint action is taken on the
            restriction of ``psi`` to ``ambient`` instead of on ``psi`` itself.

    Returns:
        Factorisation: the local stabilizers and the joint order.
    """
    group = theory.group
    labels_h = commutant(theory, H).orbit_labels
    labels_k = commutant(theory, K).orbit_labels
    local_h = Subgroup(group, lift_flags(H.indices, labels_h[H.array[:, psi]] == labels_h[psi]))
    local_k = Subgroup(group, lift_flags(K.indices, labels_k[K.array[:, psi]] == labels_k[psi]))

    images = _joint_images(theory, H.mask, K.mask)[:, :, psi]
    if ambient is None:
        hits = images == psi
    else:
        labels_p = commutant(theory, ambient).orbit_labels
        hits = labels_p[images] == labels_p[psi]
    result = Factorisation(local_h, local_k, int(hits.sum()))
    if result.joint_order > result.product_order:
        raise InvariantViolation(f"Joint stabilizer at {psi} exceeds the product of local stabilizers")
    return result


def is_product_state(theory, H, psi):
    """
    Decides whether the global state ``psi`` is a product state over ``H``.

    The joint action of ``H x H'`` on the orbit of ``psi`` factorises when its
    basepoint stabilizer is the product of the stabilizers of the two restrictions.

    Returns:
        PurityVerdict: the verdict together with the stabilizers it was decided from.
    """
    state = restrict(theory, H, psi)
    return theory.memo(('product', H.mask, psi), lambda: _purity_verdict(theory, H, psi, state))


def _purity_verdict(theory, H, psi, state):
    group = theory.group
    complement = commutant(theory, H)
    split = factorisation(theory, H, complement, psi)

    images = _joint_images(theory, H.mask, complement.mask)
    fixed = images[images[:, :, psi] == psi]
    joint_mask = 0
    for row in np.unique(fixed, axis=0).tolist():
        joint_mask |= 1 << group._index[tuple(row)]
    joint = Subgroup(group, joint_mask)

    stab_h = H.stabilizer(psi)
    stab_k = complement.stabilizer(psi)
    equation = joint.order * (stab_h & stab_k).order == stab_h.order * stab_k.order

    verdict = PurityVerdict(
        state=state,
        pure=split.factorises,
        witness_stabilizers=(split.local_h, split.local_k, joint),
        joint_order=split.joint_order,
        stabilizer_equation=equation,
    )
    if not verdict.criteria_agree:
        logging.warning(f"Product-state criteria disagree at point {psi} for a subgroup of order {H.order}")
    return verdict


def pure_local_states(theory, H):
    """StatesPure(H): the local states whose representatives are product over ``H``"""
    return [state for state in local_states(theory, H) if is_product_state(theory, H, state.representative).pure]


def pure_stabilizer(theory, H, state):
    """
    Returns the stabilizer of a pure local state, computed two ways.

    Returns:
        tuple[Subgroup, Subgroup]: the stabilizer under the local action, and
            ``Stab(psi) ^ H`` for the representative ``psi``.

    Raises:
        NotPure: if ``state`` is not a pure local state of ``H``.
    """
    if state.owner != H:
        raise ElementNotInOwner("Local state is owned by a different subgroup")
    psi = state.representative
    if not is_product_state(theory, H, psi).pure:
        raise NotPure(f"Local state {list(state.points)} is not pure")
    labels = commutant(theory, H).orbit_labels
    local = Subgroup(theory.group, lift_flags(H.indices, labels[H.array[:, psi]] == labels[psi]))
    return local, H.stabilizer(psi)


def scan_mixed(theory, lattice):
    """
    Counts product and non-product global states over every lattice node.

    Returns:
        dict: per-node counts and whether any node has both kinds.
    """
    rows = []
    for node_id, node in enumerate(lattice.nodes):
        product_points = [psi for psi in theory.points if is_product_state(theory, node, psi).pure]
        rows.append({
            'node': node_id,
            'order': node.order,
            'product': len(product_points),
            'non_product': theory.degree - len(product_points),
        })
    mixed = [row['node'] for row in rows if row['product'] and row['non_product']]
    logging.info(f"Scanned {len(rows)} subgroups: {len(mixed)} with both product and non-product states")
    return {'subgroups': rows, 'mixed_nodes': mixed, 'found': bool(mixed)}

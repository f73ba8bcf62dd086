import logging
from dataclasses import dataclass, field
from itertools import product

from core.errors import (
    IncompatibleSystems,
    InvariantViolation,
    NotProductState,
    PreconditionUnmet,
    ResourceLimit,
    StateNotInSystem,
)
from core.lattice import commutant, is_orthocomplementary, join, require_self_bicommutant
from core.permutations import Permutation, generate_group, validate_global_theory
from core.states import LocalState, factorisation, is_product_state, local_states, pure_local_states, restrict


@dataclass(frozen=True)
class System:
    """A self-bicommutant subgroup together with one orbit of its pure local states.

    Equality is set-level: same transformation group, same pure states.
    """

    theory: object = field(compare=False, repr=False)
    transf: object
    pure_orbit: tuple[LocalState, ...]

    @property
    def is_trivial(self):
        return self.transf.is_trivial

    @property
    def size(self):
        return len(self.pure_orbit)

    def __contains__(self, state):
        return state in self.pure_orbit

    def index(self, state):
        try:
            return self.pure_orbit.index(state)
        except ValueError:
            raise StateNotInSystem(f"Local state {list(state.points)} is not a pure state of the system") from None

    def to_dict(self, lattice=None):
        owner_id = lattice.node_id(self.transf) if lattice is not None else None
        return {
            'transf_node_id': owner_id,
            'transf_order': self.transf.order,
            'pure_orbit': [state.to_dict(owner_id) for state in self.pure_orbit],
        }


def trivial_system(theory):
    """I := ({1}, {all points})"""
    trivial = theory.trivial
    return System(theory, trivial, (LocalState(trivial, tuple(theory.points)),))


def _orbit_of(theory, H, psi):
    labels = commutant(theory, H).orbit_labels
    reached = set(labels[H.array[:, psi]].tolist())
    return tuple(state for state in local_states(theory, H) if labels[state.representative] in reached)


def make_system(theory, H, psi):
    """
    Builds the system of ``H`` through the pure local state of ``psi``.

    Raises:
        NotProductState: if ``psi`` is not a product state over ``H``.
    """
    if not is_product_state(theory, H, psi).pure:
        raise NotProductState(f"Point {psi} is not a product state over the subgroup of order {H.order}")
    return System(theory, H, _orbit_of(theory, H, psi))


def systems_of(theory, H):
    """Every system with transformation group ``H``: one per orbit of pure local states"""
    systems = []
    covered = set()
    for state in pure_local_states(theory, H):
        if state in covered:
            continue
        system = System(theory, H, _orbit_of(theory, H, state.representative))
        covered.update(system.pure_orbit)
        systems.append(system)
    return systems


def enumerate_systems(theory, lattice):
    """All systems of the theory, by lattice node then by smallest pure state"""
    systems = [system for node in lattice.nodes for system in systems_of(theory, node)]
    logging.info(f"Found {len(systems)} systems over {len(lattice)} self-bicommutant subgroups")
    return systems


def _candidates(theory, H, K, P, rho, sigma, budget):
    """Global states restricting to ``rho`` and ``sigma`` that are pure over ``P`` and product over ``H`` and ``K``"""
    found = []
    for psi in sorted(set(rho.points) & set(sigma.points)):
        budget[0] += 1
        if budget[0] > theory.limits.max_candidates:
            raise ResourceLimit(f"Witness search exceeds max_candidates={theory.limits.max_candidates}")
        if is_product_state(theory, P, psi).pure and factorisation(theory, H, K, psi, ambient=P).factorises:
            found.append(psi)
    return found


def are_compatible(A, B):
    """
    Decides whether two systems can be composed.

    The trivial system is compatible with everything. Otherwise the groups must meet
    trivially, be orthocomplementary, and the canonical representatives must admit a global state
    that restricts to both and is product over the join and over the two factors.
    The outcome must not depend on the representatives; this is checked over all of them.

    Returns:
        int | None: the first witness point in canonical order, or ``None``.
    """
    return A.theory.memo(('compatible', A, B), lambda: _are_compatible(A, B))


def _are_compatible(A, B):
    theory = A.theory
    if A.is_trivial:
        return B.pure_orbit[0].representative
    if B.is_trivial:
        return A.pure_orbit[0].representative
    H, K = A.transf, B.transf
    if not (H & K).is_trivial:
        return None
    if not is_orthocomplementary(theory, H, K):
        return None

    P = join(theory, H, K)
    budget = [0]
    witness = None
    outcomes = set()
    for rho, sigma in product(A.pure_orbit, B.pure_orbit):
        found = _candidates(theory, H, K, P, rho, sigma, budget)
        outcomes.add(bool(found))
        if found and witness is None and rho == A.pure_orbit[0] and sigma == B.pure_orbit[0]:
            witness = found[0]
    if len(outcomes) > 1:
        raise InvariantViolation("Compatibility depends on the choice of representatives")
    return witness


def tensor_systems(A, B):
    """
    H (x) K := (H v K, orbit of the witness's restriction to H v K).

    Raises:
        IncompatibleSystems: if the systems are not compatible.
    """
    return A.theory.memo(('tensor', A, B), lambda: _tensor_systems(A, B))


def _tensor_systems(A, B):
    witness = are_compatible(A, B)
    if witness is None:
        raise IncompatibleSystems("Systems are not compatible")
    if A.is_trivial:
        return B
    if B.is_trivial:
        return A
    return make_system(A.theory, join(A.theory, A.transf, B.transf), witness)


def tensor_pure_states(A, B, rho, sigma):
    """
    Returns the unique pure state of ``A (x) B`` restricting to ``rho`` and ``sigma``.

    Raises:
        StateNotInSystem: if ``rho`` or ``sigma`` is not a pure state of its system.
        IncompatibleSystems: if the systems are not compatible.
    """
    A.index(rho)
    B.index(sigma)
    return A.theory.memo(('tensor_state', A, B, rho, sigma), lambda: _tensor_pure_states(A, B, rho, sigma))


def _tensor_pure_states(A, B, rho, sigma):
    composite = tensor_systems(A, B)
    if A.is_trivial:
        return sigma
    if B.is_trivial:
        return rho
    theory = A.theory
    P = composite.transf
    found = _candidates(theory, A.transf, B.transf, P, rho, sigma, [0])
    restrictions = {restrict(theory, P, psi) for psi in found}
    if len(restrictions) != 1:
        raise InvariantViolation(f"Expected one composite pure state, found {len(restrictions)}")
    state = restrictions.pop()
    if state not in composite:
        raise InvariantViolation("Composite pure state is outside the composite system")
    return state


def check_associativity_triple(A, B, C):
    """
    Checks strict associativity and commutativity of the system tensor on one triple.

    Returns:
        dict: ``holds`` plus the individual checks by name.

    Raises:
        PreconditionUnmet: if ``A (x) B`` or ``(A (x) B) (x) C`` is undefined.
    """
    if are_compatible(A, B) is None:
        raise PreconditionUnmet("A (x) B is not defined")
    AB = tensor_systems(A, B)
    if are_compatible(AB, C) is None:
        raise PreconditionUnmet("(A (x) B) (x) C is not defined")
    left = tensor_systems(AB, C)

    checks = {
        'A,C compatible': are_compatible(A, C) is not None,
        'B,C compatible': are_compatible(B, C) is not None,
    }
    BC = tensor_systems(B, C) if checks['B,C compatible'] else None
    AC = tensor_systems(A, C) if checks['A,C compatible'] else None
    checks['A,(B(x)C) compatible'] = BC is not None and are_compatible(A, BC) is not None
    checks['B,(A(x)C) compatible'] = AC is not None and are_compatible(B, AC) is not None
    middle = tensor_systems(A, BC) if checks['A,(B(x)C) compatible'] else None
    right = tensor_systems(B, AC) if checks['B,(A(x)C) compatible'] else None
    checks['(A(x)B)(x)C == A(x)(B(x)C)'] = middle == left
    checks['(A(x)B)(x)C == B(x)(A(x)C)'] = right == left
    checks['A(x)B == B(x)A'] = tensor_systems(B, A) == AB
    return {'holds': all(checks.values()), 'checks': checks}


def restriction_equals_trace(A, B):
    """
    For compatible systems with groups ``H``, ``K``, checks on every pair of pure
    states of ``A (x) B`` that equal restrictions to ``H`` means same ``K``-orbit, and
    symmetrically.

    Returns:
        list[dict]: violations with the offending pair of points.
    """
    theory = A.theory
    composite = tensor_systems(A, B)
    if A.is_trivial or B.is_trivial:
        return []
    H, K, P = A.transf, B.transf, composite.transf
    ambient = commutant(theory, P).orbit_labels
    points = [state.representative for state in composite.pure_orbit]

    def reach(sub, psi):
        return frozenset(ambient[sub.array[:, psi]].tolist())

    violations = []
    for first, second in (('H', 'K'), ('K', 'H')):
        X, Y = (H, K) if first == 'H' else (K, H)
        labels = commutant(theory, X).orbit_labels
        for psi, phi in product(points, repeat=2):
            same_restriction = labels[psi] == labels[phi]
            same_orbit = reach(Y, psi) == reach(Y, phi)
            if same_restriction != same_orbit:
                violations.append({
                    'property': 'restriction_equals_trace',
                    'witness': {'restricted_to': first, 'orbit_of': second, 'points': [psi, phi]},
                })
    return violations


def system_theory(system):
    """
    The restriction of the theory to a system: ``Transf`` acting on its pure states.

    The centre of the group acts trivially, so the image is the quotient by the centre.

    Returns:
        tuple[GlobalTheory, Callable[[Permutation], Permutation]]: the validated theory
            and the map from transformations to permutations of the pure states.
    """
    theory = system.theory
    H = system.transf
    require_self_bicommutant(theory, H)
    labels = commutant(theory, H).orbit_labels
    position = {int(labels[state.representative]): i for i, state in enumerate(system.pure_orbit)}

    def induce(h):
        return Permutation(tuple(position[int(labels[h(state.representative)])] for state in system.pure_orbit))

    image = generate_group(system.size, {induce(h) for h in H}, theory.limits)
    return validate_global_theory(image, system.size, theory.limits), induce

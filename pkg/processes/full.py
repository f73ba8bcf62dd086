"""System-environment pairs and general processes ``(u, sigma; M)``, with discarding."""
import logging
from dataclasses import dataclass, field

from core.errors import (
    ElementNotInOwner,
    IncompatibleSystems,
    InvariantViolation,
    ResourceLimit,
    StateNotInPair,
    TypeMismatch,
)
from core.lattice import is_orthocomplemented
from core.permutations import Permutation
from core.states import LocalState, act_local, iterated_restrict
from core.systems import System, are_compatible, enumerate_systems, tensor_pure_states, tensor_systems, trivial_system


@dataclass(frozen=True)
class SystemEnvironmentPair:
    """A system together with a compatible environment it shares a pure state with."""

    system: System
    environment: System
    total: System = field(compare=False, repr=False)

    @property
    def theory(self):
        return self.system.theory


@dataclass(frozen=True)
class PairState:
    """A state on a pair, stored with a purification; equal when the restrictions are equal."""

    pair: SystemEnvironmentPair
    state: LocalState
    purification: LocalState = field(compare=False, repr=False)


def make_pair(system, environment):
    """
    Raises:
        IncompatibleSystems: if the systems are not compatible.
    """
    return SystemEnvironmentPair(system, environment, tensor_systems(system, environment))


def trivial_pair(theory):
    unit = trivial_system(theory)
    return make_pair(unit, unit)


def pairs_compatible(first, second):
    """Pairs are compatible when their total systems are"""
    return are_compatible(first.total, second.total) is not None


def tensor_pairs(first, second):
    """(H, E) (x) (K, F) := (H (x) K, E (x) F)"""
    if not pairs_compatible(first, second):
        raise IncompatibleSystems("System-environment pairs are not compatible")
    return make_pair(tensor_systems(first.system, second.system),
                     tensor_systems(first.environment, second.environment))


def pair_states(pair):
    """States(H, E): restrictions to ``H`` of the pure states of ``H (x) E``, sorted by points"""
    theory = pair.theory
    return pair.theory.memo(('pair_states', pair), lambda: sorted(
        {iterated_restrict(theory, pair.system.transf, psi) for psi in pair.total.pure_orbit},
        key=lambda state: state.points,
    ))


def lift_state(pair, state):
    """
    Wraps a local state of ``pair.system`` as a PairState with its first purification.

    Raises:
        StateNotInPair: if no pure state of the total system restricts to ``state``.
    """
    theory = pair.theory
    for psi in pair.total.pure_orbit:
        if iterated_restrict(theory, pair.system.transf, psi) == state:
            return PairState(pair, state, psi)
    raise StateNotInPair(f"Local state {list(state.points)} is not a state of the pair")


def purifications(pair, state):
    """Every pure state of the total system restricting to ``state``"""
    theory = pair.theory
    return [psi for psi in pair.total.pure_orbit if iterated_restrict(theory, pair.system.transf, psi) == state]


@dataclass(frozen=True)
class Process:
    """A process ``(u, sigma; M): (H, E) -> (K, E (x) M)`` with ``H (x) L == K (x) M``."""

    domain: SystemEnvironmentPair
    codomain: SystemEnvironmentPair
    discarded: System
    ancilla: System
    prep: LocalState
    transform: Permutation

    @property
    def theory(self):
        return self.domain.theory


def make_process(domain, codomain_system, discarded, ancilla, prep, transform):
    """
    Builds ``(u, sigma; M)`` after checking the typing rules.

    Args:
        domain (SystemEnvironmentPair): ``(H, E)``.
        codomain_system (System): ``K``.
        discarded (System): ``M``.
        ancilla (System): ``L``, compatible with ``H (x) E``.
        prep (LocalState): pure state of ``L``.
        transform (Permutation): element of ``Transf(H (x) L)``.

    Returns:
        Process: with codomain ``(K, E (x) M)``.

    Raises:
        StateNotInSystem, IncompatibleSystems, TypeMismatch, ElementNotInOwner.
    """
    ancilla.index(prep)
    if are_compatible(ancilla, domain.total) is None:
        raise IncompatibleSystems("Ancilla is not compatible with the domain pair")
    before = tensor_systems(domain.system, ancilla)
    after = tensor_systems(codomain_system, discarded)
    if before != after:
        raise TypeMismatch("H (x) L differs from K (x) M")
    if transform not in before.transf:
        raise ElementNotInOwner(f"{transform} is not a transformation of H (x) L")
    codomain = make_pair(codomain_system, tensor_systems(domain.environment, discarded))
    return Process(domain, codomain, discarded, ancilla, prep, transform)


def identity_process(pair):
    """(1, 1; I) on ``pair``"""
    theory = pair.theory
    unit = trivial_system(theory)
    return make_process(pair, pair.system, unit, unit, unit.pure_orbit[0], Permutation.identity(theory.degree))


def discard(pair):
    """The discarding map (H, E) -> (I, E (x) H)"""
    theory = pair.theory
    unit = trivial_system(theory)
    return make_process(pair, unit, pair.system, unit, unit.pure_orbit[0], Permutation.identity(theory.degree))


def transformation(system, transform):
    """(u, 1; I): (H, I) -> (H, I)"""
    unit = trivial_system(system.theory)
    return make_process(make_pair(system, unit), system, unit, unit, unit.pure_orbit[0], transform)


def preparation(system, prep):
    """(1, sigma; I): (I, I) -> (H, I)"""
    theory = system.theory
    unit = trivial_system(theory)
    return make_process(trivial_pair(theory), system, unit, system, prep, Permutation.identity(theory.degree))


def _evaluate(process, purification):
    domain = process.domain
    theory = process.theory
    joint = tensor_pure_states(domain.total, process.ancilla, purification, process.prep)
    total = tensor_systems(domain.total, process.ancilla)
    return act_local(theory, total.transf, process.transform, joint)


def apply_process(process, rho):
    """
    rho -> Restr_K(u(rho (x) sigma)), computed from the stored purification of ``rho``.

    Raises:
        TypeMismatch: if ``rho`` lives on another pair.
        StateNotInPair: if ``rho.state`` is not a state of the pair.
    """
    if rho.pair != process.domain:
        raise TypeMismatch("State lives on a different system-environment pair")
    if rho.state not in pair_states(process.domain):
        raise StateNotInPair(f"Local state {list(rho.state.points)} is not a state of the pair")
    theory = process.theory
    moved = theory.memo(('evaluate', process, rho.purification), lambda: _evaluate(process, rho.purification))
    codomain = process.codomain
    if moved not in codomain.total:
        raise InvariantViolation("Output purification is not a pure state of the codomain pair")
    return PairState(codomain, iterated_restrict(theory, codomain.system.transf, moved), moved)


def state_map(process):
    """The process as a table ``((input, output), ...)`` over the domain pair's states"""
    pair = process.domain
    return tuple(
        (state, apply_process(process, lift_state(pair, state)).state)
        for state in pair_states(pair)
    )


def process_key(process):
    """Extensional identity: the types together with the output of every input state"""
    return process.domain, process.codomain, tuple(output for _, output in state_map(process))


def compose_process(second, first):
    """
    (v, tau; C) o (u, sigma; B) := (vu, sigma (x) tau; B (x) C).

    Raises:
        TypeMismatch: if the codomain pair of ``first`` is not the domain pair of ``second``.
    """
    if first.codomain != second.domain:
        raise TypeMismatch("Codomain pair of the first process is not the domain pair of the second")
    ancilla = tensor_systems(first.ancilla, second.ancilla)
    prep = tensor_pure_states(first.ancilla, second.ancilla, first.prep, second.prep)
    discarded = tensor_systems(first.discarded, second.discarded)
    composite = make_process(first.domain, second.codomain.system, discarded, ancilla, prep,
                             second.transform * first.transform)
    if composite.codomain != second.codomain:
        raise InvariantViolation("Composite codomain differs from the second process's codomain")
    return composite


def tensor_processes(first, second):
    """
    (u, sigma; B) (x) (v, tau; D) := (uv, sigma (x) tau; B (x) D).

    Raises:
        IncompatibleSystems: if the domain pairs or the codomain pairs are not compatible.
    """
    if not pairs_compatible(first.codomain, second.codomain):
        raise IncompatibleSystems("Codomain pairs are not compatible")
    domain = tensor_pairs(first.domain, second.domain)
    ancilla = tensor_systems(first.ancilla, second.ancilla)
    prep = tensor_pure_states(first.ancilla, second.ancilla, first.prep, second.prep)
    product = make_process(
        domain,
        tensor_systems(first.codomain.system, second.codomain.system),
        tensor_systems(first.discarded, second.discarded),
        ancilla,
        prep,
        first.transform * second.transform,
    )
    if product.codomain != tensor_pairs(first.codomain, second.codomain):
        raise InvariantViolation("Tensor codomain differs from the tensor of the codomain pairs")
    return product


def restriction_map(pair, factor, rest):
    """
    Iterated restriction States(H, E) -> States(K, E (x) F) for ``H == K (x) F``.

    Returns:
        tuple[SystemEnvironmentPair, dict[LocalState, LocalState]]: the target pair and the map.
    """
    if tensor_systems(factor, rest) != pair.system:
        raise TypeMismatch("Factors do not compose to the pair's system")
    target = make_pair(factor, tensor_systems(pair.environment, rest))
    theory = pair.theory
    mapping = {}
    for state in pair_states(pair):
        psi = lift_state(pair, state).purification
        mapping[state] = iterated_restrict(theory, factor.transf, psi)
    return target, mapping


def factor_systems(theory, lattice):
    """Systems whose transformation group is orthocomplemented; the bounded object generators"""
    return [s for s in enumerate_systems(theory, lattice) if is_orthocomplemented(theory, s.transf)]


def bounded_objects(systems, cap):
    """
    Compatible pairs of the given systems, in input order, truncated to ``cap``.

    The trivial pair comes first whenever the trivial system is among ``systems``.
    """
    objects = []
    for system in systems:
        for environment in systems:
            if len(objects) >= cap:
                return objects
            if are_compatible(system, environment) is not None:
                objects.append(make_pair(system, environment))
    return objects


def enumerate_processes(pair, systems, codomain_systems=None):
    """
    All processes out of ``pair`` whose ancilla, codomain and discarded systems are drawn from ``systems``.

    Args:
        pair (SystemEnvironmentPair): the domain.
        systems (list[System]): candidate ancilla, codomain and discarded systems.
        codomain_systems (list[System] | None): restricts the codomain system ``K``.

    Returns:
        list[Process]: every well-typed process, in construction order (not deduplicated).

    Raises:
        ResourceLimit: if more than ``max_candidates`` processes would be built.
    """
    theory = pair.theory
    targets = systems if codomain_systems is None else codomain_systems
    processes = []
    for ancilla in systems:
        if are_compatible(ancilla, pair.total) is None:
            continue
        before = tensor_systems(pair.system, ancilla)
        splits = [
            (K, M) for K in targets for M in systems
            if are_compatible(K, M) is not None and tensor_systems(K, M) == before
            and are_compatible(pair.environment, M) is not None
        ]
        for K, M in splits:
            if are_compatible(K, tensor_systems(pair.environment, M)) is None:
                continue
            for prep in ancilla.pure_orbit:
                for u in before.transf:
                    processes.append(make_process(pair, K, M, ancilla, prep, u))
                    if len(processes) > theory.limits.max_candidates:
                        raise ResourceLimit(f"Process enumeration exceeds max_candidates={theory.limits.max_candidates}")
    return processes


def enumerate_generalised_effects(pair, systems):
    """
    Every process out of ``pair`` landing on the trivial system, deduplicated by its state map.

    Returns:
        list[Process]: one representative per distinct effect.
    """
    unit = trivial_system(pair.theory)
    effects = {}
    for process in enumerate_processes(pair, systems, codomain_systems=[unit]):
        key = (process.domain, tuple(output for _, output in state_map(process)))
        effects.setdefault(key, process)
    logging.debug(f"Found {len(effects)} generalised effects on a pair with {len(pair_states(pair))} states")
    return list(effects.values())

"""Pure processes: ``(u, sigma)`` sending a pure state ``rho`` to ``u(rho (x) sigma)``."""
from dataclasses import dataclass

from core.errors import ElementNotInOwner, IncompatibleSystems, InvariantViolation, TypeMismatch
from core.permutations import Permutation
from core.states import LocalState, act_local
from core.systems import System, are_compatible, tensor_pure_states, tensor_systems, trivial_system


@dataclass(frozen=True)
class PureProcess:
    """A pure process ``(u, sigma): H -> H (x) L``.

    Attributes:
        domain (System): the input system ``H``.
        ancilla (System): the system ``L`` prepared in ``prep``.
        prep (LocalState): a pure state of ``L``.
        transform (Permutation): an element of ``Transf(H (x) L)``.
        codomain (System): ``H (x) L``.
    """

    domain: System
    ancilla: System
    prep: LocalState
    transform: Permutation
    codomain: System

    @property
    def theory(self):
        return self.domain.theory


def make_pure_process(domain, ancilla, prep, transform):
    """
    Builds ``(u, sigma)`` after checking its typing.

    Raises:
        StateNotInSystem: if ``prep`` is not a pure state of ``ancilla``.
        IncompatibleSystems: if ``domain (x) ancilla`` is undefined.
        ElementNotInOwner: if ``transform`` is not a transformation of the codomain.
    """
    ancilla.index(prep)
    codomain = tensor_systems(domain, ancilla)
    if transform not in codomain.transf:
        raise ElementNotInOwner(f"{transform} is not a transformation of the codomain")
    return PureProcess(domain, ancilla, prep, transform, codomain)


def identity_pure(system):
    unit = trivial_system(system.theory)
    return make_pure_process(system, unit, unit.pure_orbit[0], Permutation.identity(system.theory.degree))


def apply_pure(process, rho):
    """rho -> u(rho (x) sigma)"""
    joint = tensor_pure_states(process.domain, process.ancilla, rho, process.prep)
    return act_local(process.theory, process.codomain.transf, process.transform, joint)


def pure_state_map(process):
    """The process as a table ``((input, output), ...)`` over the domain's pure states"""
    return tuple((rho, apply_pure(process, rho)) for rho in process.domain.pure_orbit)


def compose_pure(q, p):
    """
    (v, tau) o (u, sigma) := (vu, sigma (x) tau).

    Raises:
        TypeMismatch: if the codomain of ``p`` is not the domain of ``q``.
    """
    if p.codomain != q.domain:
        raise TypeMismatch("Codomain of the first process is not the domain of the second")
    ancilla = tensor_systems(p.ancilla, q.ancilla)
    prep = tensor_pure_states(p.ancilla, q.ancilla, p.prep, q.prep)
    composite = make_pure_process(p.domain, ancilla, prep, q.transform * p.transform)
    if composite.codomain != q.codomain:
        raise InvariantViolation("Composite codomain differs from the second process's codomain")
    return composite


def tensor_pure_processes(p, q):
    """
    (u, sigma) (x) (v, tau) := (uv, sigma (x) tau).

    Raises:
        IncompatibleSystems: if the domains or the codomains are not compatible.
    """
    if are_compatible(p.codomain, q.codomain) is None:
        raise IncompatibleSystems("Codomains are not compatible")
    domain = tensor_systems(p.domain, q.domain)
    ancilla = tensor_systems(p.ancilla, q.ancilla)
    prep = tensor_pure_states(p.ancilla, q.ancilla, p.prep, q.prep)
    product = make_pure_process(domain, ancilla, prep, p.transform * q.transform)
    if product.codomain != tensor_systems(p.codomain, q.codomain):
        raise InvariantViolation("Tensor codomain differs from the tensor of the codomains")
    return product

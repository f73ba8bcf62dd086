import pytest

from core.errors import IncompatibleSystems, NotProductState, PreconditionUnmet, StateNotInSystem
from core.lattice import enumerate_self_bicommutant, is_orthogonal
from core.states import restrict
from core.systems import (
    are_compatible,
    check_associativity_triple,
    enumerate_systems,
    make_system,
    restriction_equals_trace,
    system_theory,
    systems_of,
    tensor_pure_states,
    tensor_systems,
    trivial_system,
)


@pytest.fixture(scope='module')
def s3x3_systems(s3x3_parts):
    theory, rows, columns = s3x3_parts
    return theory, make_system(theory, rows, 0), make_system(theory, columns, 0), make_system(theory, theory.whole, 0)


def test_s3_systems(s3, s3_lattice):
    systems = enumerate_systems(s3, s3_lattice)
    assert [(s.transf.order, s.size) for s in systems] == [(1, 1), (2, 1), (2, 1), (2, 1), (6, 3)]
    assert systems[0] == trivial_system(s3)
    assert systems_of(s3, s3_lattice.nodes[4]) == []


def test_make_system_requires_product_state(s3, s3_lattice):
    with pytest.raises(NotProductState):
        make_system(s3, s3_lattice.nodes[1], 1)


def test_system_membership(s3x3_systems):
    theory, rows, columns, _ = s3x3_systems
    assert rows.size == 3
    assert rows.index(rows.pure_orbit[2]) == 2
    with pytest.raises(StateNotInSystem):
        rows.index(columns.pure_orbit[0])


def test_rows_and_columns_compose_to_whole(s3x3_systems):
    theory, rows, columns, whole = s3x3_systems
    assert are_compatible(rows, columns) == 0
    assert tensor_systems(rows, columns) == whole
    assert tensor_systems(columns, rows) == whole
    state = tensor_pure_states(rows, columns, restrict(theory, rows, 5), restrict(theory, columns, 5))
    assert state.points == (5,)


def test_unit_is_strict(s3x3_systems):
    theory, rows, _, whole = s3x3_systems
    unit = trivial_system(theory)
    assert tensor_systems(rows, unit) == rows
    assert tensor_systems(unit, whole) == whole
    rho = rows.pure_orbit[1]
    assert tensor_pure_states(rows, unit, rho, unit.pure_orbit[0]) == rho


def test_overlapping_systems_are_incompatible(s3x3_systems):
    _, rows, _, whole = s3x3_systems
    assert are_compatible(rows, rows) is None
    assert are_compatible(rows, whole) is None
    with pytest.raises(IncompatibleSystems):
        tensor_systems(rows, whole)


def test_abelian_system_is_not_self_compatible(s3, s3_lattice):
    c2 = enumerate_systems(s3, s3_lattice)[1]
    assert c2.transf == s3_lattice.nodes[1]
    assert is_orthogonal(s3, c2.transf, c2.transf)
    assert are_compatible(c2, c2) is None
    assert are_compatible(c2, trivial_system(s3)) == c2.pure_orbit[0].representative
    with pytest.raises(IncompatibleSystems):
        tensor_systems(c2, c2)


def test_restriction_equals_trace(s3x3_systems):
    _, rows, columns, _ = s3x3_systems
    assert restriction_equals_trace(rows, columns) == []


def test_associativity_triple(s3x3_systems):
    theory, rows, columns, _ = s3x3_systems
    result = check_associativity_triple(rows, columns, trivial_system(theory))
    assert result['holds']
    with pytest.raises(PreconditionUnmet):
        check_associativity_triple(rows, rows, columns)


def test_associativity_on_three_factors(s3x3x3):
    lattice = enumerate_self_bicommutant(s3x3x3)
    factors = [s for s in enumerate_systems(s3x3x3, lattice) if s.transf.order == 6 and s.size == 3]
    assert len(factors) == 3
    a, b, c = factors
    result = check_associativity_triple(a, b, c)
    assert result['holds'], result['checks']
    assert tensor_systems(tensor_systems(a, b), c).transf == s3x3x3.whole


def test_system_theory_of_rows(s3x3_systems):
    _, rows, _, whole = s3x3_systems
    restricted, induce = system_theory(rows)
    assert restricted.degree == 3
    assert restricted.group.order == 6
    restricted_whole, _ = system_theory(whole)
    assert restricted_whole.group.order == 36

import json
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cli.loader import build_theory, parse_spec
from core.constructions import symmetric_group
from core.errors import (
    DegreeMismatch,
    ElementNotInGroup,
    InvalidPermutation,
    NotCentreless,
    NotTransitive,
    PointOutOfRange,
    ResourceLimit,
)
from core.permutations import (
    Permutation,
    centralizer,
    centre,
    generate_group,
    stabilizer,
    subgroup_generated_by,
    theory_violations,
    validate_global_theory,
)
from core.settings import Limits

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.permutations(range(n)).map(lambda images: Permutation(tuple(images)))
)


def same_degree(n=5):
    return st.permutations(range(n)).map(lambda images: Permutation(tuple(images)))


def test_composition_applies_right_factor_first():
    p = Permutation((1, 2, 0))
    q = Permutation((1, 0, 2))
    assert (p * q).to_list() == [2, 1, 0]
    assert (p * q)(0) == p(q(0))


def test_rejects_non_bijections():
    with pytest.raises(InvalidPermutation):
        Permutation((0, 0, 1))
    with pytest.raises(InvalidPermutation):
        Permutation((1, 2, 3))


def test_rejects_mixed_degrees():
    with pytest.raises(DegreeMismatch):
        Permutation((1, 0)) * Permutation((0, 1, 2))


def test_cycle_notation():
    assert str(Permutation((1, 0, 3, 2))) == '(0 1)(2 3)'
    assert str(Permutation.identity(4)) == '()'


@given(permutations)
def test_inverse_cancels(p):
    assert (p * p.inverse()).is_identity
    assert (p.inverse() * p).is_identity


@given(same_degree(), same_degree(), same_degree())
def test_composition_is_associative(p, q, r):
    assert (p * q) * r == p * (q * r)


def test_symmetric_group_orders():
    assert [symmetric_group(n).order for n in range(1, 6)] == [1, 2, 6, 24, 120]


def test_elements_are_canonically_ordered():
    group = symmetric_group(3)
    assert group.elements[0] == Permutation.identity(3)
    assert list(group.elements) == sorted(group.elements)
    assert group.identity_index == 0


def test_index_of_foreign_element():
    group = generate_group(3, [Permutation((1, 2, 0))])
    with pytest.raises(ElementNotInGroup):
        group.index(Permutation((1, 0, 2)))


def test_generation_respects_max_order():
    with pytest.raises(ResourceLimit):
        symmetric_group(5, Limits(max_order=100))


def test_centralizer_and_centre():
    group = symmetric_group(3)
    transposition = Permutation((1, 0, 2))
    assert set(centralizer(group, [transposition])) == {Permutation.identity(3), transposition}
    assert centre(group).is_trivial
    abelian = generate_group(3, [Permutation((1, 2, 0))])
    assert centre(abelian).order == 3


def test_subgroup_orbits_and_stabilizers():
    group = symmetric_group(4)
    sub = subgroup_generated_by(group, [Permutation((1, 0, 2, 3))])
    assert sub.orbits() == [(0, 1), (2,), (3,)]
    assert sub.orbit(1) == (0, 1)
    assert sub.stabilizer(2) == sub
    assert sub.stabilizer(0).is_trivial
    with pytest.raises(PointOutOfRange):
        sub.orbit(4)


def test_subgroup_set_operations():
    group = symmetric_group(3)
    left = subgroup_generated_by(group, [Permutation((1, 0, 2))])
    rotations = subgroup_generated_by(group, [Permutation((1, 2, 0))])
    assert (left & rotations).is_trivial
    assert left <= subgroup_generated_by(group, [Permutation((1, 0, 2)), Permutation((1, 2, 0))])
    assert not left <= rotations


def test_validates_global_theory(s3):
    assert s3.group.order == 6
    assert list(s3.points) == [0, 1, 2]
    assert stabilizer(s3, s3.whole, 0).order == 2


def test_reports_every_failed_condition():
    group = generate_group(4, [Permutation((1, 0, 2, 3))])
    assert theory_violations(group, 4) == ['transitive', 'centreless']
    with pytest.raises(NotTransitive) as excinfo:
        validate_global_theory(group, 4)
    assert excinfo.value.violations == ['transitive', 'centreless']


def test_abelian_group_is_not_centreless():
    with pytest.raises(NotCentreless):
        validate_global_theory(generate_group(2, [Permutation((1, 0))]), 2)


def test_theory_memo_computes_once(s3):
    calls = []
    first = s3.memo(('answer', 1), lambda: calls.append(1) or 'value')
    second = s3.memo(('answer', 1), lambda: calls.append(1) or 'other')
    assert first == second == 'value'
    assert calls == [1]


@pytest.fixture(scope='module', params=['s4', 's3x3'])
def lattice_nodes(request):
    theory = request.getfixturevalue(request.param)
    return theory, request.getfixturevalue(f'{request.param}_lattice').nodes


def test_orbit_stabilizer_on_lattice_nodes(lattice_nodes):
    theory, nodes = lattice_nodes
    for sub in nodes:
        for point in theory.points:
            fixed = stabilizer(theory, sub, point)
            assert fixed <= sub
            assert all(g(point) == point for g in fixed)
            assert len(sub.orbit(point)) * fixed.order == sub.order


def test_lattice_nodes_are_closed(lattice_nodes):
    _, nodes = lattice_nodes
    for sub in nodes:
        members = set(sub.members)
        assert all(a * b in members for a, b in product(sub.members, repeat=2))
        assert all(a.inverse() in members for a in sub.members)


@given(st.lists(same_degree(4), min_size=1, max_size=3))
def test_generated_group_is_closed(generators):
    group = generate_group(4, generators)
    elements = set(group.elements)
    assert set(generators) <= elements
    assert all(a * b in elements for a, b in product(group.elements, repeat=2))
    assert all(a.inverse() in elements for a in group.elements)


def test_regenerating_from_members_keeps_canonical_order(lattice_nodes):
    theory, nodes = lattice_nodes
    for sub in nodes:
        regenerated = generate_group(theory.degree, [g.to_list() for g in reversed(sub.members)])
        assert regenerated.elements == sub.members


def test_theory_document_round_trip(lattice_nodes):
    theory, _ = lattice_nodes
    generators = [g.to_list() for g in theory.group.generators]
    document = json.loads(json.dumps({
        'degree': theory.degree,
        'generators': {'global': generators[::-1]},
        'subgroups': {'first': [len(generators) - 1]},
    }))
    rebuilt, named = build_theory(parse_spec(document))
    assert rebuilt.group.elements == theory.group.elements
    assert named['first'] == theory.subgroup([theory.group.generators[0]])

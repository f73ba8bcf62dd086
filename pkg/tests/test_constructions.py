from itertools import product

import pytest

from core.constructions import coset_action, product_action, symmetric_group
from core.errors import DegreeMismatch
from core.permutations import Permutation, subgroup_generated_by, validate_global_theory


def test_product_action_codes_first_coordinate_most_significant():
    group, factors = product_action(symmetric_group(3), symmetric_group(3))
    assert group.degree == 9
    assert group.order == 36
    assert [g.to_list() for g in factors[0]] == [[3, 4, 5, 0, 1, 2, 6, 7, 8], [3, 4, 5, 6, 7, 8, 0, 1, 2]]
    assert [g.to_list() for g in factors[1]] == [[1, 0, 2, 4, 3, 5, 7, 6, 8], [1, 2, 0, 4, 5, 3, 7, 8, 6]]


def test_product_action_factors_commute():
    _, factors = product_action(symmetric_group(3), symmetric_group(2))
    for a, b in product(factors[0], factors[1]):
        assert a * b == b * a


def test_product_action_needs_a_factor():
    with pytest.raises(DegreeMismatch):
        product_action()


def test_coset_action_on_point_stabilizer_is_natural_action():
    group = symmetric_group(3)
    stab = subgroup_generated_by(group, [Permutation((0, 2, 1))])
    action, induce = coset_action(group, stab)
    assert action.degree == 3
    assert action.order == 6
    for a, b in product(group, repeat=2):
        assert induce(a * b) == induce(a) * induce(b)


def test_diagonal_coset_action(s3x3_cosets_parts):
    theory, first = s3x3_cosets_parts
    assert theory.degree == 6
    assert theory.group.order == 36
    assert first.order == 6


def test_fixture_theories_validate(s3x3x3, s4):
    assert s3x3x3.group.order == 216
    assert s4.group.order == 24
    assert validate_global_theory(symmetric_group(5), 5).degree == 5

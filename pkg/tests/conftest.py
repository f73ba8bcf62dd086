import pytest

from core.constructions import coset_action, product_action, symmetric_group
from core.lattice import enumerate_self_bicommutant
from core.permutations import subgroup_generated_by, validate_global_theory


@pytest.fixture(scope='session')
def s3():
    """S3 on 3 points"""
    return validate_global_theory(symmetric_group(3), 3)


@pytest.fixture(scope='session')
def s3x3_parts():
    group, factors = product_action(symmetric_group(3), symmetric_group(3))
    theory = validate_global_theory(group, 9)
    return theory, theory.subgroup(factors[0]), theory.subgroup(factors[1])


@pytest.fixture(scope='session')
def s3x3(s3x3_parts):
    """S3 x S3 on 9 points"""
    return s3x3_parts[0]


@pytest.fixture(scope='session')
def s3x3_cosets_parts():
    """S3 x S3 on the 6 cosets of the diagonal, with the image of the first factor"""
    group, factors = product_action(symmetric_group(3), symmetric_group(3))
    diagonal = [a * b for a, b in zip(factors[0], factors[1])]
    sub = subgroup_generated_by(group, diagonal)
    action, induce = coset_action(group, sub)
    theory = validate_global_theory(action, 6)
    return theory, theory.subgroup([induce(g) for g in factors[0]])


@pytest.fixture(scope='session')
def s3x3x3():
    """S3 x S3 x S3 on 27 points"""
    group, _ = product_action(symmetric_group(3), symmetric_group(3), symmetric_group(3))
    return validate_global_theory(group, 27)


@pytest.fixture(scope='session')
def s4():
    """S4 on 4 points"""
    return validate_global_theory(symmetric_group(4), 4)


@pytest.fixture(scope='session')
def s3_lattice(s3):
    return enumerate_self_bicommutant(s3)


@pytest.fixture(scope='session')
def s3x3_lattice(s3x3):
    return enumerate_self_bicommutant(s3x3)


@pytest.fixture(scope='session')
def s4_lattice(s4):
    return enumerate_self_bicommutant(s4)

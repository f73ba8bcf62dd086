from itertools import product

import pytest

from processes.generation import closure, verify_generation
from processes.pmcat import (
    AssociativityDefinednessViolation,
    FiniteCategoryInstance,
    FullnessViolation,
    RepletenessViolation,
    check_partially_monoidal,
    discard_ids,
    extract_instance,
)


def isomorphic_pair():
    """Unit e, objects a and b with a ≅ b, and z standing for every tensor of a and b."""
    e, a, b, z = range(4)
    f, g = 4, 5
    compose = {(i, i): i for i in range(4)}
    compose.update({(f, a): f, (b, f): f, (g, b): g, (a, g): g, (g, f): a, (f, g): b})
    tensor_objects = {}
    for x in range(4):
        tensor_objects[(x, e)] = tensor_objects[(e, x)] = x
    for x, y in product((a, b), repeat=2):
        tensor_objects[(x, y)] = z
    tensor_morphisms = {}
    for m in range(6):
        tensor_morphisms[(m, e)] = tensor_morphisms[(e, m)] = m
    for m, n in product((a, b, f, g), repeat=2):
        tensor_morphisms[(m, n)] = z
    return FiniteCategoryInstance(
        objects=['e', 'a', 'b', 'z'],
        sources=[e, a, b, z, a, b],
        targets=[e, a, b, z, b, a],
        compose=compose,
        identity={i: i for i in range(4)},
        tensor_objects=tensor_objects,
        tensor_morphisms=tensor_morphisms,
        unit=e,
    )


def disjoint_union():
    """Subsets of {a, b, c} under disjoint union, identities only"""
    labels = ['', 'a', 'b', 'c', 'ab', 'bc', 'ac', 'abc']
    index = {frozenset(label): i for i, label in enumerate(labels)}
    tensor = {}
    for x, y in product(index, repeat=2):
        if not x & y:
            tensor[(index[x], index[y])] = index[x | y]
    n = len(labels)
    return FiniteCategoryInstance(
        objects=labels,
        sources=list(range(n)),
        targets=list(range(n)),
        compose={(i, i): i for i in range(n)},
        identity={i: i for i in range(n)},
        tensor_objects=tensor,
        tensor_morphisms=dict(tensor),
        unit=0,
    )


def test_well_formed_instances_pass():
    assert check_partially_monoidal(isomorphic_pair()) == []
    assert check_partially_monoidal(disjoint_union()) == []


def test_isomorphism_classes():
    assert isomorphic_pair().isomorphism_classes() == [0, 1, 1, 3]


def test_missing_morphism_tensor_breaks_fullness():
    instance = isomorphic_pair()
    del instance.tensor_morphisms[(4, 5)]
    violations = check_partially_monoidal(instance)
    assert violations == [FullnessViolation((4, 5))]
    assert violations[0].to_dict() == {'property': 'FullnessViolation', 'witness': [4, 5]}


def test_tensor_must_respect_isomorphism():
    instance = isomorphic_pair()
    del instance.tensor_objects[(2, 2)]
    for pair in ((2, 2), (2, 5), (5, 2), (5, 5), (2, 4), (4, 2), (4, 4)):
        del instance.tensor_morphisms[pair]
    assert check_partially_monoidal(instance) == [RepletenessViolation((1, 1))]


def test_associativity_of_definedness():
    instance = disjoint_union()
    for pair in ((1, 5), (5, 1)):
        del instance.tensor_objects[pair]
        del instance.tensor_morphisms[pair]
    assert check_partially_monoidal(instance) == [AssociativityDefinednessViolation((1, 2, 3))]


@pytest.fixture(scope='module')
def s3_instance(s3, s3_lattice):
    return extract_instance(s3, lattice=s3_lattice)


def test_s3_instance(s3_instance):
    assert s3_instance.objects == ['(S0,S0)', '(S0,S1)', '(S1,S0)']
    assert s3_instance.unit == 0
    assert s3_instance.tensor_objects[(0, 1)] == s3_instance.tensor_objects[(1, 0)] == 1
    assert (1, 2) not in s3_instance.tensor_objects
    assert check_partially_monoidal(s3_instance) == []


def test_s3_discarding_maps(s3_instance):
    discards = discard_ids(s3_instance)
    assert discards
    assert all(s3_instance.targets[m] in (0, 1) for m in discards)


def test_closure_of_identities_is_identities(s3_instance):
    identities = set(s3_instance.identity.values())
    assert closure(s3_instance, identities) == identities


def test_s3_generation(s3, s3_lattice, s3_instance):
    report = verify_generation(s3, lattice=s3_lattice, instance=s3_instance)
    assert report['objects'] == 3
    assert report['pure_fragment']['equal']
    assert report['full']['equal']
    assert report['holds']


@pytest.mark.slow
def test_s3x3_instance(s3x3, s3x3_lattice):
    instance = extract_instance(s3x3, lattice=s3x3_lattice)
    assert len(instance.objects) == 9
    assert check_partially_monoidal(instance) == []
    assert verify_generation(s3x3, lattice=s3x3_lattice, instance=instance)['holds']

import pytest

from core.errors import ElementNotInOwner, IncompatibleSystems, StateNotInPair, TypeMismatch
from core.permutations import Permutation
from core.states import restrict
from core.systems import make_system, tensor_systems, trivial_system
from processes.full import (
    PairState,
    apply_process,
    bounded_objects,
    compose_process,
    discard,
    enumerate_generalised_effects,
    factor_systems,
    identity_process,
    lift_state,
    make_pair,
    make_process,
    pair_states,
    preparation,
    process_key,
    purifications,
    restriction_map,
    state_map,
    tensor_pairs,
    tensor_processes,
    transformation,
)
from processes.pure import (
    apply_pure,
    compose_pure,
    identity_pure,
    make_pure_process,
    pure_state_map,
    tensor_pure_processes,
)

SWAP_ROWS = Permutation((3, 4, 5, 0, 1, 2, 6, 7, 8))
CYCLE_COLUMNS = Permutation((1, 2, 0, 4, 5, 3, 7, 8, 6))


@pytest.fixture(scope='module')
def systems(s3x3_parts):
    theory, rows, columns = s3x3_parts
    return {
        'theory': theory,
        'unit': trivial_system(theory),
        'rows': make_system(theory, rows, 0),
        'columns': make_system(theory, columns, 0),
        'whole': make_system(theory, theory.whole, 0),
    }


def outputs(process):
    return [output.points for _, output in state_map(process)]


# pure processes

def test_pure_process_prepares_and_transforms(systems):
    rows, columns = systems['rows'], systems['columns']
    p = make_pure_process(rows, columns, columns.pure_orbit[0], SWAP_ROWS)
    assert p.codomain == systems['whole']
    assert [output.points for _, output in pure_state_map(p)] == [(3,), (0,), (6,)]
    assert apply_pure(p, rows.pure_orbit[2]).points == (6,)


def test_pure_identity_and_type_errors(systems):
    rows, columns = systems['rows'], systems['columns']
    ident = identity_pure(rows)
    assert [(i.points, o.points) for i, o in pure_state_map(ident)] == [(s.points, s.points) for s in rows.pure_orbit]
    p = make_pure_process(rows, columns, columns.pure_orbit[0], SWAP_ROWS)
    with pytest.raises(TypeMismatch):
        compose_pure(p, p)
    with pytest.raises(ElementNotInOwner):
        make_pure_process(rows, systems['unit'], systems['unit'].pure_orbit[0], CYCLE_COLUMNS)


def test_pure_composition_is_sequential(systems):
    rows, columns, whole = systems['rows'], systems['columns'], systems['whole']
    p = make_pure_process(rows, columns, columns.pure_orbit[1], SWAP_ROWS)
    q = make_pure_process(whole, systems['unit'], systems['unit'].pure_orbit[0], CYCLE_COLUMNS)
    composite = compose_pure(q, p)
    assert composite.transform == CYCLE_COLUMNS * SWAP_ROWS
    for rho in rows.pure_orbit:
        assert apply_pure(composite, rho) == apply_pure(q, apply_pure(p, rho))


def test_pure_tensor_of_identities(systems):
    product = tensor_pure_processes(identity_pure(systems['rows']), identity_pure(systems['columns']))
    assert product.domain == systems['whole']
    assert all(i == o for i, o in pure_state_map(product))


# full processes

def test_pair_states_and_purifications(systems):
    pair = make_pair(systems['rows'], systems['columns'])
    assert pair.total == systems['whole']
    states = pair_states(pair)
    assert [s.points for s in states] == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    assert [psi.points for psi in purifications(pair, states[1])] == [(3,), (4,), (5,)]
    assert lift_state(pair, states[1]).purification.points == (3,)
    with pytest.raises(StateNotInPair):
        lift_state(pair, restrict(systems['theory'], systems['columns'].transf, 0))


def test_pairs_need_compatible_systems(systems):
    with pytest.raises(IncompatibleSystems):
        make_pair(systems['rows'], systems['rows'])
    unit = systems['unit']
    assert tensor_pairs(make_pair(systems['rows'], unit), make_pair(systems['columns'], unit)).system == systems['whole']


def test_identity_discard_and_preparation(systems):
    rows, unit = systems['rows'], systems['unit']
    pair = make_pair(rows, systems['columns'])
    assert outputs(identity_process(pair)) == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    dropped = discard(pair)
    assert dropped.codomain.system == unit
    assert dropped.codomain.environment == systems['whole']
    assert outputs(dropped) == [tuple(range(9))] * 3
    prepared = preparation(rows, rows.pure_orbit[2])
    assert outputs(prepared) == [(6, 7, 8)]


def test_process_composition_and_tensor(systems):
    rows, columns = systems['rows'], systems['columns']
    swap = transformation(rows, SWAP_ROWS)
    prepared = preparation(rows, rows.pure_orbit[0])
    assert outputs(compose_process(swap, prepared)) == [(3, 4, 5)]
    with pytest.raises(TypeMismatch):
        compose_process(prepared, swap)

    both = tensor_processes(swap, transformation(columns, CYCLE_COLUMNS))
    assert both.domain.system == systems['whole']
    table = dict((i.points, o.points) for i, o in state_map(both))
    assert table[(0,)] == (4,)


def test_process_rejects_foreign_state(systems):
    swap = transformation(systems['rows'], SWAP_ROWS)
    other = make_pair(systems['rows'], systems['columns'])
    state = lift_state(other, pair_states(other)[0])
    with pytest.raises(TypeMismatch):
        apply_process(swap, state)


def test_unit_laws_hold_extensionally(systems):
    swap = transformation(systems['rows'], SWAP_ROWS)
    padded = tensor_processes(swap, identity_process(make_pair(systems['unit'], systems['unit'])))
    lifted = compose_process(padded, identity_process(swap.domain))
    assert process_key(lifted) == process_key(swap)


def test_output_does_not_depend_on_purification(systems):
    unit = systems['unit']
    pair = make_pair(systems['rows'], systems['columns'])
    process = make_process(pair, systems['rows'], unit, unit, unit.pure_orbit[0], SWAP_ROWS)
    for state in pair_states(pair):
        results = {apply_process(process, PairState(pair, state, psi)).state for psi in purifications(pair, state)}
        assert len(results) == 1
    assert [output.points for _, output in state_map(process)] == [(3, 4, 5), (0, 1, 2), (6, 7, 8)]


def test_restriction_map_to_a_factor(systems):
    whole_pair = make_pair(systems['whole'], systems['unit'])
    target, mapping = restriction_map(whole_pair, systems['rows'], systems['columns'])
    assert target == make_pair(systems['rows'], systems['columns'])
    assert {state.points: image.points for state, image in mapping.items()}[(7,)] == (6, 7, 8)


def test_factor_systems_and_objects(systems, s3x3_lattice):
    theory = systems['theory']
    factors = factor_systems(theory, s3x3_lattice)
    assert factors == [systems['unit'], systems['rows'], systems['columns'], systems['whole']]
    objects = bounded_objects(factors, 64)
    assert len(objects) == 9
    assert objects[0] == make_pair(systems['unit'], systems['unit'])
    assert len(bounded_objects(factors, 4)) == 4


def test_every_pair_has_one_effect(systems, s3x3_lattice):
    factors = factor_systems(systems['theory'], s3x3_lattice)
    for pair in bounded_objects(factors, 64):
        effects = enumerate_generalised_effects(pair, factors)
        assert len(effects) == 1
        assert tensor_systems(effects[0].codomain.system, effects[0].codomain.environment) == pair.total

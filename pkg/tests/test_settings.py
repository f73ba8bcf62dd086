import json

import pytest

from cli.loader import TheorySpec, build_theory, parse_spec
from core.errors import (
    DegreeMismatch,
    EngineError,
    IncompatibleSystems,
    InvariantViolation,
    ParseError,
    ResourceLimit,
)
from core.permutations import Permutation
from core.settings import LIMITS, Limits, load_config, load_limits


def test_configured_limits_match_defaults():
    assert LIMITS == Limits()


def test_override_replaces_known_keys():
    limits = Limits().override({'max_order': 10, 'seed': 7})
    assert limits.max_order == 10 and limits.seed == 7
    assert Limits().override(None) == Limits()


@pytest.mark.parametrize('values', [{'max_orders': 1}, {'max_order': -1}, {'seed': 'zero'}, {'object_cap': True}])
def test_override_rejects_bad_values(values):
    with pytest.raises(ValueError):
        Limits().override(values)


def test_config_without_limits_section(tmp_path):
    config = tmp_path / 'engine_config.json'
    config.write_text(json.dumps({'other': {}}), encoding='utf-8')
    with pytest.raises(ValueError, match='limits section not found'):
        load_config(config)


def test_missing_config_falls_back_to_defaults(tmp_path):
    assert load_limits(tmp_path / 'absent.json') == Limits()


def test_exit_codes():
    assert ParseError.exit_code == IncompatibleSystems.exit_code == 2
    assert ResourceLimit.exit_code == 3
    assert InvariantViolation.exit_code == EngineError.exit_code == 1
    assert issubclass(ParseError, ValueError)


def test_parse_spec_shapes():
    spec = parse_spec({'degree': 3, 'generators': {'global': [[1, 0, 2]]}, 'subgroups': {'t': [0]}})
    assert spec == TheorySpec(3, [Permutation((1, 0, 2))], {'t': [0]}, {})
    with pytest.raises(ParseError):
        parse_spec({'degree': 3, 'generators': {}})
    with pytest.raises(ParseError):
        parse_spec({'degree': 3, 'generators': {'global': [[1, 0, 2]]}, 'subgroups': {'t': [3]}})
    with pytest.raises(DegreeMismatch):
        parse_spec({'degree': 4, 'generators': {'global': [[1, 0, 2]]}})


def test_spec_limits_are_applied():
    spec = TheorySpec(3, [Permutation((1, 0, 2)), Permutation((1, 2, 0))], {'rotations': [1]}, {'sample_size': 5})
    theory, subgroups = build_theory(spec)
    assert theory.limits.sample_size == 5
    assert subgroups['rotations'].order == 3
    with pytest.raises(ParseError):
        build_theory(TheorySpec(3, spec.generators, {}, {'bogus': 1}))

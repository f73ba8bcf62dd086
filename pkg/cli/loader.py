"""Theory specifications: a JSON document naming the degree, generators and subgroups."""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from core.errors import DegreeMismatch, ParseError
from core.permutations import Permutation, generate_group, validate_global_theory
from core.settings import LIMITS, project_dir

theories_dir = project_dir / 'data' / 'theories'


@dataclass(frozen=True)
class TheorySpec:
    """A parsed theory specification.

    Attributes:
        degree (int): number of points.
        generators (list[Permutation]): the global generators.
        subgroups (dict[str, list[int]]): named subgroups as indices into ``generators``.
        limits (dict): limit overrides, applied on top of the configured limits.
    """

    degree: int
    generators: list
    subgroups: dict = field(default_factory=dict)
    limits: dict = field(default_factory=dict)


def resolve_path(path):
    """The path itself, or the fixture of that name under ``data/theories``"""
    path = Path(path)
    if not path.exists() and (theories_dir / path.name).exists():
        return theories_dir / path.name
    return path


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError(f"{where} must be a list of integers")
    return value


def parse_spec(data):
    """
    Validates the document shape and builds a TheorySpec.

    Raises:
        ParseError: if a field is missing or has the wrong type.
        InvalidPermutation, DegreeMismatch: if a generator is not a permutation of the points.
    """
    if not isinstance(data, dict):
        raise ParseError("Theory specification must be a JSON object")
    degree = data.get('degree')
    if not isinstance(degree, int) or isinstance(degree, bool) or degree < 1:
        raise ParseError(f"degree must be a positive integer, got {degree!r}")

    generators = data.get('generators')
    if not isinstance(generators, dict) or 'global' not in generators:
        raise ParseError("generators.global is required")
    raw = generators['global']
    if not isinstance(raw, list):
        raise ParseError("generators.global must be a list of permutations")
    perms = []
    for i, images in enumerate(raw):
        perm = Permutation(tuple(_int_list(images, f"generators.global[{i}]")))
        if perm.degree != degree:
            raise DegreeMismatch(f"generators.global[{i}] has length {perm.degree}, expected {degree}")
        perms.append(perm)

    subgroups = data.get('subgroups', {})
    if not isinstance(subgroups, dict):
        raise ParseError("subgroups must map names to generator index lists")
    for name, indices in subgroups.items():
        for index in _int_list(indices, f"subgroups.{name}"):
            if not 0 <= index < len(perms):
                raise ParseError(f"subgroups.{name} refers to generator {index}, only {len(perms)} given")

    limits = data.get('limits', {})
    if not isinstance(limits, dict):
        raise ParseError("limits must be an object")
    return TheorySpec(degree, perms, dict(subgroups), dict(limits))


def load_spec(path):
    """
    Reads a theory specification file.

    Raises:
        ParseError: if the file is missing or is not valid JSON.
    """
    path = resolve_path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ParseError(f"No theory specification at {path}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"Malformed JSON in {path.name}: {e}") from None
    return parse_spec(data)


def build_theory(spec, max_order=None):
    """
    Generates and validates the global theory of a specification.

    Limits: configured values, then the specification's ``limits``, then ``max_order``.

    Returns:
        tuple[GlobalTheory, dict[str, Subgroup]]: the theory and its named subgroups.
    """
    try:
        limits = LIMITS.override(spec.limits)
        if max_order is not None:
            limits = limits.override({'max_order': max_order})
    except ValueError as e:
        raise ParseError(str(e)) from None

    group = generate_group(spec.degree, spec.generators, limits)
    theory = validate_global_theory(group, spec.degree, limits)
    subgroups = {
        name: theory.subgroup([spec.generators[i] for i in indices])
        for name, indices in spec.subgroups.items()
    }
    if subgroups:
        logging.info(f"Named subgroups: {', '.join(f'{n} (order {s.order})' for n, s in subgroups.items())}")
    return theory, subgroups


def load_theory(path, max_order=None):
    return build_theory(load_spec(path), max_order)

"""Finite category instances and the axioms of strict symmetric partially-monoidal categories."""
import logging
from dataclasses import dataclass, field
from itertools import product
from random import Random

from core.errors import InvariantViolation
from core.lattice import enumerate_self_bicommutant
from core.settings import LIMITS
from processes.full import (
    bounded_objects,
    discard,
    enumerate_processes,
    factor_systems,
    identity_process,
    pair_states,
    pairs_compatible,
    process_key,
    state_map,
    tensor_pairs,
    tensor_processes,
    trivial_pair,
)


@dataclass
class FiniteCategoryInstance:
    """A finite category with a partially defined strict tensor, stored as tables.

    Objects and morphisms are integer ids. ``compose[(g, f)]`` is ``g o f``;
    ``tensor_objects[(a, b)]`` and ``tensor_morphisms[(f, g)]`` are present exactly
    where the tensor is defined.

    Attributes:
        objects (list[str]): object labels, indexed by object id.
        sources (list[int]): source object of every morphism.
        targets (list[int]): target object of every morphism.
        compose (dict[tuple[int, int], int]): composition table.
        identity (dict[int, int]): identity morphism of every object.
        tensor_objects (dict[tuple[int, int], int]): tensor of objects where defined.
        tensor_morphisms (dict[tuple[int, int], int]): tensor of morphisms where defined.
        unit (int | None): the unit object.
        object_payload (list): optional per-object data (the system-environment pair).
        payload (list): optional per-morphism data (the representative process).
        keys (dict): optional map from extensional key to morphism id.
    """

    objects: list
    sources: list
    targets: list
    compose: dict
    identity: dict
    tensor_objects: dict
    tensor_morphisms: dict
    unit: object = None
    object_payload: list = field(default_factory=list, repr=False)
    payload: list = field(default_factory=list, repr=False)
    keys: dict = field(default_factory=dict, repr=False)
    alternates: dict = field(default_factory=dict, repr=False)

    @property
    def morphisms(self):
        return range(len(self.sources))

    def homs(self, a, b):
        return [m for m in self.morphisms if self.sources[m] == a and self.targets[m] == b]

    def outgoing(self, a):
        return [m for m in self.morphisms if self.sources[m] == a]

    def isomorphism_classes(self):
        """Object id -> smallest id of its isomorphism class (mutually inverse morphism pairs)"""
        parent = list(range(len(self.objects)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self.morphisms:
            a, b = self.sources[f], self.targets[f]
            if a >= b:
                continue
            for g in self.homs(b, a):
                if self.compose.get((g, f)) == self.identity.get(a) and self.compose.get((f, g)) == self.identity.get(b):
                    ra, rb = find(a), find(b)
                    parent[max(ra, rb)] = min(ra, rb)
                    break
        return [find(x) for x in range(len(self.objects))]

    def to_dict(self):
        return {
            'objects': list(self.objects),
            'morphisms': [[self.sources[m], self.targets[m]] for m in self.morphisms],
            'unit': self.unit,
            'tensor_objects': sorted([a, b, c] for (a, b), c in self.tensor_objects.items()),
        }


@dataclass(frozen=True)
class Violation:
    """A failed axiom with the ids that witness it"""

    kind = 'Violation'
    witness: tuple

    def to_dict(self):
        return {'property': self.kind, 'witness': list(self.witness)}


class CompositionViolation(Violation):
    kind = 'CompositionViolation'


class FullnessViolation(Violation):
    kind = 'FullnessViolation'


class FunctorialityViolation(Violation):
    kind = 'FunctorialityViolation'


class RepletenessViolation(Violation):
    kind = 'RepletenessViolation'


class AssociativityDefinednessViolation(Violation):
    kind = 'AssociativityDefinednessViolation'


class StrictAssociativityViolation(Violation):
    kind = 'StrictAssociativityViolation'


class UnitViolation(Violation):
    kind = 'UnitViolation'


class SymmetryViolation(Violation):
    kind = 'SymmetryViolation'


def _bounded(items, count, limits, draw):
    """All of ``items()`` when ``count`` is within the exhaustive limit, else ``sample_size`` seeded draws.

    ``draw(rng)`` returns one random item, or ``None`` when the draw hits an empty slot.
    """
    if count <= limits.exhaustive_limit:
        return items()
    rng = Random(limits.seed)
    drawn = (draw(rng) for _ in range(limits.sample_size))
    return (item for item in drawn if item is not None)


def _check_composition(instance, report, limits):
    compose, identity = instance.compose, instance.identity
    src, tgt = instance.sources, instance.targets
    for f in instance.morphisms:
        if compose.get((f, identity[src[f]])) != f or compose.get((identity[tgt[f]], f)) != f:
            report(CompositionViolation, (f,))
    composable = [(f, g) for f in instance.morphisms for g in instance.outgoing(tgt[f])]
    for f, g in composable:
        h = compose.get((g, f))
        if h is None or src[h] != src[f] or tgt[h] != tgt[g]:
            report(CompositionViolation, (f, g))

    by_source = {}
    for f, g in composable:
        by_source.setdefault(f, []).append(g)
    count = sum(len(by_source.get(g, ())) for _, g in composable)

    def triples():
        for f, g in composable:
            for h in by_source.get(g, ()):
                yield f, g, h

    def draw(rng):
        f, g = composable[rng.randrange(len(composable))]
        following = by_source.get(g)
        return (f, g, following[rng.randrange(len(following))]) if following else None

    for f, g, h in _bounded(triples, count, limits, draw):
        gf, hg = compose.get((g, f)), compose.get((h, g))
        if gf is None or hg is None:
            continue
        if compose.get((h, gf)) != compose.get((hg, f)):
            report(CompositionViolation, (f, g, h))
    return composable


def _check_tensor_functor(instance, report, composable, limits):
    tobj, tmor = instance.tensor_objects, instance.tensor_morphisms
    src, tgt = instance.sources, instance.targets
    for f, g in product(instance.morphisms, repeat=2):
        defined_ends = (src[f], src[g]) in tobj and (tgt[f], tgt[g]) in tobj
        fg = tmor.get((f, g))
        if defined_ends and fg is None:
            report(FullnessViolation, tuple(sorted((f, g))))
        if fg is not None and (not defined_ends or src[fg] != tobj[(src[f], src[g])] or tgt[fg] != tobj[(tgt[f], tgt[g])]):
            report(FunctorialityViolation, (f, g))

    for (a, b), ab in tobj.items():
        if tmor.get((instance.identity[a], instance.identity[b])) != instance.identity[ab]:
            report(FunctorialityViolation, (instance.identity[a], instance.identity[b]))

    count = len(composable) ** 2

    def quadruples():
        return product(composable, repeat=2)

    def draw(rng):
        return composable[rng.randrange(len(composable))], composable[rng.randrange(len(composable))]

    compose = instance.compose
    for (f, f2), (g, g2) in _bounded(quadruples, count, limits, draw):
        first, second = tmor.get((f, g)), tmor.get((f2, g2))
        left_f, left_g = compose.get((f2, f)), compose.get((g2, g))
        if None in (first, second, left_f, left_g):
            continue
        left = tmor.get((left_f, left_g))
        right = compose.get((second, first))
        if left is not None and left != right:
            report(FunctorialityViolation, (f, f2, g, g2))


def _check_repleteness(instance, report):
    classes = instance.isomorphism_classes()
    members = {}
    for obj, rep in enumerate(classes):
        members.setdefault(rep, []).append(obj)
    tobj = instance.tensor_objects
    seen = set()
    for a, b in list(tobj):
        witness = (classes[a], classes[b])
        if witness in seen:
            continue
        seen.add(witness)
        if not all((x, y) in tobj for x in members[classes[a]] for y in members[classes[b]]):
            report(RepletenessViolation, witness)


def _check_associativity(instance, report, limits):
    tobj, tmor = instance.tensor_objects, instance.tensor_morphisms
    n = len(instance.objects)
    for a, b, c in product(range(n), repeat=3):
        left = tobj.get((tobj[(a, b)], c)) if (a, b) in tobj else None
        right = tobj.get((a, tobj[(b, c)])) if (b, c) in tobj else None
        if (left is None) != (right is None):
            report(AssociativityDefinednessViolation, tuple(sorted((a, b, c))))
        elif left is not None and left != right:
            report(StrictAssociativityViolation, (a, b, c))

    partners = {}
    for f, g in tmor:
        partners.setdefault(f, []).append(g)
    count = sum(len(partners.get(fg, ())) for fg in tmor.values())

    def triples():
        for (f, g), fg in tmor.items():
            for h in partners.get(fg, ()):
                yield f, g, h

    defined = list(tmor.items())

    def draw(rng):
        (f, g), fg = defined[rng.randrange(len(defined))]
        following = partners.get(fg)
        return (f, g, following[rng.randrange(len(following))]) if following else None

    for f, g, h in _bounded(triples, count, limits, draw):
        gh = tmor.get((g, h))
        if gh is None:
            continue
        right = tmor.get((f, gh))
        if right is not None and right != tmor[(tmor[(f, g)], h)]:
            report(StrictAssociativityViolation, ('morphisms', f, g, h))


def _check_unit(instance, report):
    unit = instance.unit
    if unit is None:
        if instance.objects:
            report(UnitViolation, ('missing unit',))
        return
    tobj, tmor = instance.tensor_objects, instance.tensor_morphisms
    for a in range(len(instance.objects)):
        if tobj.get((unit, a)) != a or tobj.get((a, unit)) != a:
            report(UnitViolation, (a,))
    unit_id = instance.identity[unit]
    for f in instance.morphisms:
        for pair in ((f, unit_id), (unit_id, f)):
            if pair in tmor and tmor[pair] != f:
                report(UnitViolation, pair)


def _check_symmetry(instance, report):
    tobj, tmor = instance.tensor_objects, instance.tensor_morphisms
    for (a, b), ab in tobj.items():
        if tobj.get((b, a)) != ab:
            report(SymmetryViolation, tuple(sorted((a, b))))
    for (f, g), fg in tmor.items():
        gf = tmor.get((g, f))
        if gf is not None and gf != fg:
            report(SymmetryViolation, ('morphisms',) + tuple(sorted((f, g))))


def check_partially_monoidal(instance, limits=None):
    """
    Checks the strict symmetric partially-monoidal axioms on a finite instance.

    Each violated axiom is reported once per canonical witness (sorted ids where
    the axiom is symmetric in its arguments).

    Returns:
        list[Violation]: empty iff every axiom holds.
    """
    limits = limits or LIMITS
    found = {}

    def report(kind, witness):
        found.setdefault((kind.kind, witness), kind(witness))

    composable = _check_composition(instance, report, limits)
    _check_tensor_functor(instance, report, composable, limits)
    _check_repleteness(instance, report)
    _check_associativity(instance, report, limits)
    _check_unit(instance, report)
    _check_symmetry(instance, report)
    violations = list(found.values())
    logging.info(f"Partially-monoidal check: {len(instance.objects)} objects, "
                 f"{len(instance.sources)} morphisms, {len(violations)} violations")
    return violations


def _system_names(objects):
    names = {}
    for pair in objects:
        for system in (pair.system, pair.environment):
            names.setdefault(system, f"S{len(names)}")
    return names


def extract_instance(theory, object_cap=None, lattice=None):
    """
    Builds the finite category of processes between bounded system-environment pairs.

    Objects are compatible pairs of factor systems (at most ``object_cap``);
    morphisms are processes deduplicated by their state maps. Composition is
    composition of state maps; the tensor is the tensor of representative processes.

    Returns:
        FiniteCategoryInstance: with the representative processes in ``payload``.
    """
    cap = theory.limits.object_cap if object_cap is None else object_cap
    lattice = lattice or enumerate_self_bicommutant(theory)
    systems = factor_systems(theory, lattice)
    pairs = bounded_objects(systems, cap)
    names = _system_names(pairs)
    object_id = {pair: i for i, pair in enumerate(pairs)}

    instance = FiniteCategoryInstance(
        objects=[f"({names[p.system]},{names[p.environment]})" for p in pairs],
        sources=[], targets=[], compose={}, identity={}, tensor_objects={}, tensor_morphisms={},
        object_payload=list(pairs),
    )
    tables = []
    for pair in pairs:
        for process in enumerate_processes(pair, systems):
            if process.codomain not in object_id:
                continue
            key = process_key(process)
            if key in instance.keys:
                instance.alternates.setdefault(instance.keys[key], process)
                continue
            instance.keys[key] = len(instance.sources)
            instance.sources.append(object_id[process.domain])
            instance.targets.append(object_id[process.codomain])
            instance.payload.append(process)
            tables.append(dict(state_map(process)))

    for pair in pairs:
        key = process_key(identity_process(pair))
        if key not in instance.keys:
            raise InvariantViolation("Identity process missing from the enumerated morphisms")
        instance.identity[object_id[pair]] = instance.keys[key]
    unit = trivial_pair(theory)
    instance.unit = object_id.get(unit)

    for f in instance.morphisms:
        first = instance.payload[f]
        for g in instance.outgoing(instance.targets[f]):
            second = instance.payload[g]
            outputs = tuple(tables[g][tables[f][state]] for state in pair_states(first.domain))
            h = instance.keys.get((first.domain, second.codomain, outputs))
            if h is not None:
                instance.compose[(g, f)] = h

    for a, b in product(pairs, repeat=2):
        if pairs_compatible(a, b):
            ab = tensor_pairs(a, b)
            if ab in object_id:
                instance.tensor_objects[(object_id[a], object_id[b])] = object_id[ab]

    tobj = instance.tensor_objects
    for f, g in product(instance.morphisms, repeat=2):
        ends = ((instance.sources[f], instance.sources[g]), (instance.targets[f], instance.targets[g]))
        if ends[0] in tobj and ends[1] in tobj:
            fg = tensor_processes(instance.payload[f], instance.payload[g])
            h = instance.keys.get(process_key(fg))
            if h is not None:
                instance.tensor_morphisms[(f, g)] = h

    logging.info(f"Extracted instance: {len(pairs)} objects, {len(instance.sources)} morphisms")
    return instance


def discard_ids(instance):
    """Morphism ids of the discarding maps of every object"""
    ids = set()
    for pair in dict.fromkeys(process.domain for process in instance.payload):
        key = process_key(discard(pair))
        if key in instance.keys:
            ids.add(instance.keys[key])
    return sorted(ids)

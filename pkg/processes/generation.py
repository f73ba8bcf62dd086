"""Generation of the process theory from transformations, pure states and discarding maps."""
import logging

from core.systems import trivial_system
from processes.full import preparation, process_key, transformation
from processes.pmcat import discard_ids, extract_instance


def closure(instance, generators):
    """
    The smallest set of morphism ids containing ``generators`` and closed under
    composition and tensor, as far as the instance's tables define them.
    """
    closed = set(generators)
    frontier = set(generators)
    while frontier:
        found = set()
        for f in frontier:
            for g in list(closed):
                for pair in ((f, g), (g, f)):
                    for table in (instance.compose, instance.tensor_morphisms):
                        h = table.get(pair)
                        if h is not None and h not in closed:
                            found.add(h)
        closed |= found
        frontier = found
    return closed


def _lookup(instance, processes):
    ids = set()
    for process in processes:
        key = process_key(process)
        if key in instance.keys:
            ids.add(instance.keys[key])
    return ids


def _compare(generated, expected):
    return {
        'generated': len(generated),
        'expected': len(expected),
        'equal': generated == expected,
        'missing': sorted(expected - generated),
        'extra': sorted(generated - expected),
    }


def verify_generation(theory, object_cap=None, lattice=None, instance=None):
    """
    Checks that the bounded process theory is generated as claimed.

    (a) Transformations ``(u, 1; I)`` and pure states ``(1, sigma; I)`` generate exactly
    the pure fragment (trivial environments and nothing discarded). (b) The pure
    fragment together with every discarding map generates every process.

    Returns:
        dict: ``pure_fragment`` and ``full`` comparisons plus instance sizes.
    """
    instance = instance or extract_instance(theory, object_cap, lattice)
    unit = trivial_system(theory)
    pairs = dict(enumerate(instance.object_payload))
    pure_objects = {i for i, pair in pairs.items() if pair.environment == unit}
    pure = {m for m in instance.morphisms
            if instance.sources[m] in pure_objects and instance.targets[m] in pure_objects}

    systems = {pairs[i].system for i in pure_objects}
    generators = _lookup(instance, (transformation(s, u) for s in systems for u in s.transf))
    generators |= _lookup(instance, (preparation(s, sigma) for s in systems for sigma in s.pure_orbit))
    generators |= {instance.identity[i] for i in pure_objects}
    pure_fragment = _compare(closure(instance, generators), pure)

    full_generators = pure | set(discard_ids(instance)) | set(instance.identity.values())
    full = _compare(closure(instance, full_generators), set(instance.morphisms))

    report = {
        'objects': len(instance.objects),
        'morphisms': len(instance.sources),
        'pure_fragment': pure_fragment,
        'full': full,
        'holds': pure_fragment['equal'] and full['equal'],
    }
    logging.info(f"Generation check on {report['objects']} objects: pure fragment "
                 f"{'equal' if pure_fragment['equal'] else 'differs'}, full theory {'equal' if full['equal'] else 'differs'}")
    return report

"""Report emitters: JSON documents and DOT Hasse diagrams."""
import json

from core.lattice import is_orthocomplemented, lattice_export
from core.states import scan_mixed
from core.systems import are_compatible, enumerate_systems


def to_json(data):
    return json.dumps(data, indent=2, ensure_ascii=False)


def _quote(text):
    return '"{}"'.format(str(text).replace('"', r'\"'))


def named_nodes(lattice, subgroups):
    """Lattice node id of every named subgroup, or None when it is not self-bicommutant"""
    return {name: lattice.index_of.get(sub.mask) for name, sub in (subgroups or {}).items()}


def lattice_dot(lattice, subgroups=None):
    """
    The Hasse diagram as DOT lines, bottom to top, with commutant pairs as dashed undirected edges.

    Named subgroups that are lattice nodes get their names appended to the label.

    Use like so::

        with open('lattice.dot', 'w') as f:
            f.writelines(lattice_dot(lattice))
    """
    theory = lattice.theory
    names = {}
    for name, i in named_nodes(lattice, subgroups).items():
        if i is not None:
            names.setdefault(i, []).append(name)
    yield "digraph lattice {\n"
    yield "  rankdir=BT;\n"
    for i, node in enumerate(lattice.nodes):
        shape = "doublecircle" if is_orthocomplemented(theory, node) else "circle"
        label = f"{i}: |H|={node.order}" + "".join(f" {name}" for name in names.get(i, ()))
        yield f"  n{i} [label={_quote(label)} shape={shape}];\n"
    for lower, upper in lattice.hasse:
        yield f"  n{lower} -> n{upper};\n"
    for i, j in sorted({tuple(sorted((i, j))) for i, j in enumerate(lattice.commutant_map)}):
        if i != j:
            yield f"  n{i} -> n{j} [style=dashed dir=none color=grey];\n"
    yield "}\n"


def lattice_report(lattice, subgroups=None):
    return {**lattice_export(lattice), 'named': named_nodes(lattice, subgroups)}


def systems_report(theory, lattice, subgroups=None):
    """Every system, and for every ordered pair the compatibility witness (a point) or null"""
    systems = enumerate_systems(theory, lattice)
    return {
        'degree': theory.degree,
        'named': named_nodes(lattice, subgroups),
        'systems': [{'id': i, **system.to_dict(lattice)} for i, system in enumerate(systems)],
        'compatibility': [[are_compatible(a, b) for b in systems] for a in systems],
    }


def scan_report(theory, lattice):
    return scan_mixed(theory, lattice)


def check_report(reports):
    """Combines suite reports; ``holds`` is true when no suite found a violation"""
    return {
        'holds': not any(report['violations'] for report in reports),
        'suites': reports,
    }

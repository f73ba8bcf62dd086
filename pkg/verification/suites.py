"""Executable property suites.

Every suite returns ``{"suite", "violations", "notes", "checked"}``: violations are
failed properties with a witness, notes are observations that are reported but
not asserted, and ``checked`` counts the instances examined per property.
"""
import logging
from itertools import product
from random import Random

import numpy as np

from core.errors import EngineError, IncompatibleSystems
from core.lattice import (
    bicommutant,
    centre_of,
    check_orthomodular,
    commutant,
    distributivity_violations,
    enumerate_self_bicommutant,
    is_orthocomplementary,
    is_orthocomplemented,
    join,
    product_set,
    relative_commutant,
)
from core.permutations import subgroup_generated_by
from core.states import (
    act_local,
    is_product_state,
    local_states,
    pure_local_states,
    pure_stabilizer,
)
from core.systems import (
    are_compatible,
    check_associativity_triple,
    enumerate_systems,
    restriction_equals_trace,
    system_theory,
    tensor_pure_states,
    tensor_systems,
    trivial_system,
)
from processes.full import (
    PairState,
    apply_process,
    compose_process,
    discard,
    enumerate_generalised_effects,
    factor_systems,
    make_pair,
    pair_states,
    process_key,
    purifications,
    restriction_map,
    state_map,
    tensor_processes,
)
from processes.generation import verify_generation
from processes.pmcat import check_partially_monoidal, extract_instance
from processes.pure import (
    apply_pure,
    compose_pure,
    identity_pure,
    make_pure_process,
    pure_state_map,
    tensor_pure_processes,
)

SUITES = ('lattice', 'states', 'systems', 'processes', 'pmcat')


def _new_report(suite):
    return {'suite': suite, 'violations': [], 'notes': [], 'checked': {}}


def _fail(report, prop, **witness):
    report['violations'].append({'property': prop, 'witness': witness})


def _count(report, prop, n=1):
    report['checked'][prop] = report['checked'].get(prop, 0) + n


def _within(count, limits, everything, draw):
    """Every item when ``count`` is within the exhaustive limit, else seeded draws"""
    if count <= limits.exhaustive_limit:
        return everything()
    rng = Random(limits.seed)
    return (draw(rng) for _ in range(limits.sample_size))


# lattice

def _check_exchange(report, theory, H, K, i, j):
    Hx, Kx = H.array, K.array
    p, q = len(Hx), len(Kx)

    hk = Hx[:, Kx]
    kh = Kx[:, Hx].transpose(1, 0, 2)
    _count(report, 'swap', p * q)
    if not np.array_equal(hk, kh):
        _fail(report, 'swap', H=i, K=j)

    limits = theory.limits
    quadruples = p * p * q * q
    _count(report, 'exchange', quadruples if quadruples <= limits.exhaustive_limit else limits.sample_size)
    if quadruples <= limits.exhaustive_limit:
        cd = Kx[:, Kx].reshape(-1, theory.degree)
        for a, b in product(range(p), repeat=2):
            left = Hx[a][Hx[b]][cd]
            right = Hx[a][Kx][:, Hx[b][Kx]].reshape(-1, theory.degree)
            if not np.array_equal(left, right):
                _fail(report, 'exchange', H=i, K=j, a=a, b=b)
                return
    else:
        rng = Random(limits.seed)
        for _ in range(limits.sample_size):
            a, b, c, d = (rng.randrange(p), rng.randrange(p), rng.randrange(q), rng.randrange(q))
            left = Hx[a][Hx[b]][Kx[c][Kx[d]]]
            right = Hx[a][Kx[c]][Hx[b][Kx[d]]]
            if not np.array_equal(left, right):
                _fail(report, 'exchange', H=i, K=j, a=a, b=b, c=c, d=d)
                return


def _check_orthogonal_pair(report, theory, lattice, i, j, centre_notes):
    H, K = lattice.nodes[i], lattice.nodes[j]
    _check_exchange(report, theory, H, K, i, j)

    HK = product_set(theory, H, K)
    meet = H & K
    _count(report, 'product_fibres')
    if HK.order * meet.order != H.order * K.order:
        _fail(report, 'product_fibres', H=i, K=j)
    _count(report, 'meet_central_in_product')
    if not meet <= centre_of(theory, HK):
        _fail(report, 'meet_central_in_product', H=i, K=j)
    if centre_of(theory, HK) != meet:
        centre_notes.append([i, j])
    if is_orthocomplemented(theory, H) or is_orthocomplemented(theory, K):
        _count(report, 'unique_factorisation')
        if HK.order != H.order * K.order:
            _fail(report, 'unique_factorisation', H=i, K=j)


def lattice_suite(theory, lattice=None):
    """Commutant involution, lattice laws, De Morgan, orthogonality and the tensor of transformations"""
    lattice = lattice or enumerate_self_bicommutant(theory)
    report = _new_report('lattice')
    limits = theory.limits
    nodes, cm = lattice.nodes, lattice.commutant_map
    n = len(nodes)

    _count(report, 'bounds')
    if not nodes[0].is_trivial or nodes[-1] != theory.whole:
        _fail(report, 'bounds', bottom=nodes[0].order, top=nodes[-1].order)

    for i, node in enumerate(nodes):
        _count(report, 'self_bicommutant')
        if bicommutant(theory, node) != node:
            _fail(report, 'self_bicommutant', node=i)
        _count(report, 'involution')
        if cm[cm[i]] != i:
            _fail(report, 'involution', node=i)

    cyclic = {}
    for g in theory.group.elements[:limits.sample_size]:
        sub = subgroup_generated_by(theory.group, [g], limits)
        cyclic.setdefault(sub.mask, sub)
    for sub in cyclic.values():
        first = commutant(theory, sub)
        _count(report, 'triple_commutant')
        if commutant(theory, commutant(theory, first)) != first:
            _fail(report, 'triple_commutant', order=sub.order, generators=[p.to_list() for p in sub.members[:2]])
        _count(report, 'extensive')
        if not sub <= bicommutant(theory, sub):
            _fail(report, 'extensive', order=sub.order)

    def pairs():
        return product(range(n), repeat=2)

    def draw_pair(rng):
        return rng.randrange(n), rng.randrange(n)

    orthomodular_failures = 0
    centre_notes = []
    for i, j in _within(n * n, limits, pairs, draw_pair):
        join_ij, meet_ij = lattice.join_id(i, j), lattice.meet_id(i, j)
        _count(report, 'de_morgan')
        if cm[join_ij] != lattice.meet_id(cm[i], cm[j]) or cm[meet_ij] != lattice.join_id(cm[i], cm[j]):
            _fail(report, 'de_morgan', H=i, K=j)
        _count(report, 'commutative')
        if join_ij != lattice.join_id(j, i) or meet_ij != lattice.meet_id(j, i):
            _fail(report, 'commutative', H=i, K=j)
        _count(report, 'absorption')
        if lattice.meet_id(i, join_ij) != i or lattice.join_id(i, meet_ij) != i:
            _fail(report, 'absorption', H=i, K=j)
        _count(report, 'join_upper_bound')
        if not (lattice.inclusion[i, join_ij] and lattice.inclusion[j, join_ij]):
            _fail(report, 'join_upper_bound', H=i, K=j)
        if lattice.inclusion[i, j]:
            _count(report, 'antitone')
            if not lattice.inclusion[cm[j], cm[i]]:
                _fail(report, 'antitone', H=i, K=j)
            if not check_orthomodular(theory, nodes[i], nodes[j]):
                orthomodular_failures += 1
        if lattice.inclusion[j, cm[i]]:
            _count(report, 'orthogonal_pairs')
            _check_orthogonal_pair(report, theory, lattice, i, j, centre_notes)

    def triples():
        return product(range(n), repeat=3)

    def draw_triple(rng):
        return rng.randrange(n), rng.randrange(n), rng.randrange(n)

    for i, j, k in _within(n ** 3, limits, triples, draw_triple):
        _count(report, 'associative')
        if lattice.join_id(lattice.join_id(i, j), k) != lattice.join_id(i, lattice.join_id(j, k)) or \
                lattice.meet_id(lattice.meet_id(i, j), k) != lattice.meet_id(i, lattice.meet_id(j, k)):
            _fail(report, 'associative', H=i, K=j, L=k)

    for i, node in enumerate(nodes):
        if is_orthocomplemented(theory, node):
            _count(report, 'orthocomplement_join')
            if lattice.join_id(i, cm[i]) != lattice.top:
                _fail(report, 'orthocomplement_join', node=i)

    report['notes'].append({'note': 'orthomodular_failures', 'count': orthomodular_failures})
    if centre_notes:
        report['notes'].append({'note': 'centre_of_product_exceeds_meet', 'count': len(centre_notes),
                                'first': centre_notes[0]})
    distributive = distributivity_violations(lattice)
    report['notes'].append({'note': 'distributivity_failures', 'count': len(distributive),
                            'first': distributive[0]['witness'] if distributive else None})
    return report


# states

def states_suite(theory, lattice=None):
    """Centre acts trivially, iterated restriction, pure-state closure and stabilizers, orbit constancy of purity"""
    lattice = lattice or enumerate_self_bicommutant(theory)
    report = _new_report('states')
    nodes = lattice.nodes
    landscape = []
    disagreements = []

    for i, H in enumerate(nodes):
        states = local_states(theory, H)
        for z in centre_of(theory, H):
            for state in states:
                _count(report, 'centre_acts_trivially')
                if act_local(theory, H, z, state) != state:
                    _fail(report, 'centre_acts_trivially', node=i, element=z.to_list(), state=list(state.points))

        verdicts = [is_product_state(theory, H, psi) for psi in theory.points]
        complement = nodes[lattice.commutant_map[i]]
        for psi, verdict in enumerate(verdicts):
            _count(report, 'orbit_constancy')
            if verdict.pure != verdicts[verdict.state.representative].pure:
                _fail(report, 'orbit_constancy', node=i, points=[psi, verdict.state.representative])
            _count(report, 'purity_symmetry')
            if verdict.pure != is_product_state(theory, complement, psi).pure:
                _fail(report, 'purity_symmetry', node=i, point=psi)
            if not verdict.criteria_agree:
                disagreements.append([i, psi])
        landscape.append({'node': i, 'order': H.order, 'product_states': sum(v.pure for v in verdicts)})

        pure = pure_local_states(theory, H)
        pure_set = set(pure)
        for state in pure:
            for h in H:
                _count(report, 'pure_closure')
                if act_local(theory, H, h, state) not in pure_set:
                    _fail(report, 'pure_closure', node=i, element=h.to_list(), state=list(state.points))
                    break
            local, global_ = pure_stabilizer(theory, H, state)
            _count(report, 'pure_stabilizer')
            if local != global_:
                _fail(report, 'pure_stabilizer', node=i, state=list(state.points))

    # K <= H: every local state of H lies inside one local state of K
    labels = [commutant(theory, node).orbit_labels for node in nodes]
    for j, i in zip(*np.nonzero(lattice.inclusion)):
        j, i = int(j), int(i)
        _count(report, 'iterated_restriction')
        for state in local_states(theory, nodes[i]):
            if len(set(labels[j][list(state.points)].tolist())) != 1:
                _fail(report, 'iterated_restriction', K=j, H=i, state=list(state.points))
                break

    report['notes'].append({'note': 'purity_landscape', 'nodes': landscape})
    if disagreements:
        logging.warning(f"Product-state criteria disagree on {len(disagreements)} (node, point) pairs")
        report['notes'].append({'note': 'purity_criteria_disagree', 'count': len(disagreements),
                                'first': disagreements[0]})
    return report


# systems

def systems_suite(theory, lattice=None):
    """Relative commutants, compatibility, unique composite states, restriction-equals-trace, strict associativity"""
    lattice = lattice or enumerate_self_bicommutant(theory)
    report = _new_report('systems')
    nodes = lattice.nodes
    n = len(nodes)

    for i, j in product(range(n), repeat=2):
        H, K = nodes[i], nodes[j]
        if not lattice.inclusion[j, lattice.commutant_map[i]] or not is_orthocomplementary(theory, H, K):
            continue
        P = join(theory, H, K)
        _count(report, 'relative_commutant')
        if relative_commutant(theory, H, P) != K or relative_commutant(theory, K, P) != H:
            _fail(report, 'relative_commutant', H=i, K=j)

    systems = enumerate_systems(theory, lattice)
    unit = trivial_system(theory)
    for index, system in enumerate(systems):
        _count(report, 'unit_law')
        try:
            if tensor_systems(system, unit) != system or tensor_systems(unit, system) != system:
                _fail(report, 'unit_law', system=index)
            for state in system.pure_orbit:
                if tensor_pure_states(system, unit, state, unit.pure_orbit[0]) != state:
                    _fail(report, 'unit_law', system=index, state=list(state.points))
        except EngineError as error:
            _fail(report, 'unit_law', system=index, error=str(error))

    factors = factor_systems(theory, lattice)
    names = {system: k for k, system in enumerate(factors)}
    matrix = []
    for A in factors:
        row = []
        for B in factors:
            witness = are_compatible(A, B)
            row.append(witness)
            if witness is None:
                continue
            _count(report, 'compatibility_symmetric')
            if are_compatible(B, A) is None:
                _fail(report, 'compatibility_symmetric', A=names[A], B=names[B])
            _check_composite_states(report, A, B, names)
            for violation in restriction_equals_trace(A, B):
                _fail(report, 'restriction_equals_trace', A=names[A], B=names[B], **violation['witness'])
            _count(report, 'restriction_equals_trace')
        matrix.append(row)

    for A, B, C in product(factors, repeat=3):
        if are_compatible(A, B) is None or are_compatible(tensor_systems(A, B), C) is None:
            continue
        result = check_associativity_triple(A, B, C)
        _count(report, 'associativity_triple')
        if not result['holds']:
            failed = [name for name, ok in result['checks'].items() if not ok]
            _fail(report, 'associativity_triple', A=names[A], B=names[B], C=names[C], failed=failed)

    for system in factors:
        _count(report, 'system_theory')
        try:
            system_theory(system)
        except EngineError as error:
            _fail(report, 'system_theory', system=names[system], error=str(error))

    report['notes'].append({'note': 'systems', 'count': len(systems), 'factor_systems': len(factors)})
    report['notes'].append({'note': 'compatibility_matrix', 'witnesses': matrix})
    return report


def _check_composite_states(report, A, B, names):
    composite = tensor_systems(A, B)
    for rho, sigma in product(A.pure_orbit, B.pure_orbit):
        _count(report, 'unique_composite_state')
        try:
            state = tensor_pure_states(A, B, rho, sigma)
        except EngineError as error:
            _fail(report, 'unique_composite_state', A=names[A], B=names[B], error=str(error))
            return
        if state not in composite:
            _fail(report, 'unique_composite_state', A=names[A], B=names[B], state=list(state.points))


# processes

def _pure_population(theory, factors):
    population = []
    for H, L in product(factors, repeat=2):
        if are_compatible(H, L) is None:
            continue
        total = tensor_systems(H, L)
        sigmas, transforms = L.pure_orbit, total.transf.members
        chosen = _within(len(sigmas) * len(transforms), theory.limits, lambda: product(sigmas, transforms),
                         lambda rng: (rng.choice(sigmas), rng.choice(transforms)))
        population.extend(make_pure_process(H, L, sigma, u) for sigma, u in chosen)
    return population


def _block_pairs(blocks, limits):
    """Pairs drawn from ``(lefts, rights)`` blocks; every pair within the exhaustive limit"""
    sizes = [len(lefts) * len(rights) for lefts, rights in blocks]

    def everything():
        return (pair for lefts, rights in blocks for pair in product(lefts, rights))

    def draw(rng):
        lefts, rights = rng.choices(blocks, weights=sizes)[0]
        return rng.choice(lefts), rng.choice(rights)

    return _within(sum(sizes), limits, everything, draw)


def _defined(report, build):
    """Runs a construction, counting it as undefined when representatives do not compose"""
    try:
        return build()
    except IncompatibleSystems:
        _count(report, 'undefined_constructions')
        return None


def _pure_laws(report, theory, factors):
    population = _pure_population(theory, factors)
    by_type = {}
    for p in population:
        by_type.setdefault((p.domain, p.codomain), []).append(p)
        _count(report, 'pure_identity')
        table = pure_state_map(p)
        left = compose_pure(identity_pure(p.codomain), p)
        right = compose_pure(p, identity_pure(p.domain))
        if pure_state_map(left) != table or pure_state_map(right) != table:
            _fail(report, 'pure_identity', transform=p.transform.to_list())
        _count(report, 'pure_injective')
        if len({output for _, output in table}) != len(table):
            _fail(report, 'pure_injective', transform=p.transform.to_list())

    types = list(by_type.items())
    composable = [(ps, qs) for (a, ps), (b, qs) in product(types, repeat=2) if a[1] == b[0]]
    for p, q in _block_pairs(composable, theory.limits):
        composite = _defined(report, lambda: compose_pure(q, p))
        if composite is None:
            continue
        _count(report, 'pure_composition')
        expected = tuple((rho, apply_pure(q, apply_pure(p, rho))) for rho in p.domain.pure_orbit)
        if pure_state_map(composite) != expected:
            _fail(report, 'pure_composition', first=p.transform.to_list(), second=q.transform.to_list())

    parallel = [(ps, qs) for (a, ps), (b, qs) in product(types, repeat=2)
                if are_compatible(a[0], b[0]) is not None and are_compatible(a[1], b[1]) is not None]
    for p, q in _block_pairs(parallel, theory.limits):
        product_process = _defined(report, lambda: tensor_pure_processes(p, q))
        if product_process is None:
            continue
        _count(report, 'pure_tensor')
        for rho, tau in product(p.domain.pure_orbit, q.domain.pure_orbit):
            joint = tensor_pure_states(p.domain, q.domain, rho, tau)
            expected = tensor_pure_states(p.codomain, q.codomain, apply_pure(p, rho), apply_pure(q, tau))
            if apply_pure(product_process, joint) != expected:
                _fail(report, 'pure_tensor', first=p.transform.to_list(), second=q.transform.to_list())
                break


def _every(items, limits):
    items = list(items)
    return _within(len(items), limits, lambda: items, lambda rng: rng.choice(items))


def _full_laws(report, theory, instance):
    payload = instance.payload
    limits = theory.limits
    for g, f in _every(instance.compose, limits):
        _count(report, 'constructed_composition')
        constructed = _defined(report, lambda: compose_process(payload[g], payload[f]))
        if constructed is None:
            continue
        if instance.keys.get(process_key(constructed)) != instance.compose[(g, f)]:
            _fail(report, 'constructed_composition', first=f, second=g)

    for f, alternate in instance.alternates.items():
        partners = [g for (a, g) in instance.tensor_morphisms if a == f]
        for g in _every(partners, limits):
            built = _defined(report, lambda: tensor_processes(alternate, payload[g]))
            if built is None:
                continue
            _count(report, 'extensional_substitution')
            if instance.keys.get(process_key(built)) != instance.tensor_morphisms[(f, g)]:
                _fail(report, 'extensional_substitution', morphism=f, partner=g)
        followers = [g for (g, a) in instance.compose if a == f]
        for g in _every(followers, limits):
            built = _defined(report, lambda: compose_process(payload[g], alternate))
            if built is None:
                continue
            _count(report, 'extensional_substitution')
            if instance.keys.get(process_key(built)) != instance.compose[(g, f)]:
                _fail(report, 'extensional_substitution', morphism=f, follower=g)

    for m in _every(instance.morphisms, limits):
        process = payload[m]
        pair = process.domain
        for state in pair_states(pair):
            outputs = {apply_process(process, PairState(pair, state, psi)).state for psi in purifications(pair, state)}
            _count(report, 'purification_independence')
            if len(outputs) != 1:
                _fail(report, 'purification_independence', morphism=m, state=list(state.points))


def _pair_laws(report, theory, factors, pairs):
    unit = trivial_system(theory)
    for system in factors:
        _count(report, 'inclusion_chain')
        pure = set(system.pure_orbit)
        if set(pair_states(make_pair(system, unit))) != pure:
            _fail(report, 'inclusion_chain', system=list(system.pure_orbit[0].points))
        everything = set(local_states(theory, system.transf))
        for environment in factors:
            if are_compatible(system, environment) is None:
                continue
            mixed = set(pair_states(make_pair(system, environment)))
            if not pure <= mixed <= everything:
                _fail(report, 'inclusion_chain', system=list(system.pure_orbit[0].points),
                      environment=list(environment.pure_orbit[0].points))

    for index, pair in enumerate(pairs):
        effects = enumerate_generalised_effects(pair, factors)
        _count(report, 'causality')
        top = discard(pair)
        keys = [(e.domain, tuple(out for _, out in state_map(e))) for e in effects]
        if len(effects) != 1 or keys[0] != (top.domain, tuple(out for _, out in state_map(top))):
            _fail(report, 'causality', object=index, effects=len(effects))

        for factor, rest in product(factors, repeat=2):
            if are_compatible(factor, rest) is None or tensor_systems(factor, rest) != pair.system:
                continue
            if are_compatible(pair.environment, rest) is None:
                continue
            built = _defined(report, lambda: restriction_map(pair, factor, rest))
            if built is None:
                continue
            _, mapping = built
            _count(report, 'restriction_intertwiner')
            for k in factor.transf:
                if any(mapping[act_local(theory, pair.system.transf, k, state)] != act_local(theory, factor.transf, k, image)
                       for state, image in mapping.items()):
                    _fail(report, 'restriction_intertwiner', object=index, element=k.to_list())
                    break


def processes_suite(theory, lattice=None, instance=None):
    """Pure and full category laws, purification independence, causality and generation"""
    lattice = lattice or enumerate_self_bicommutant(theory)
    report = _new_report('processes')
    factors = factor_systems(theory, lattice)
    instance = instance or extract_instance(theory, lattice=lattice)

    _pure_laws(report, theory, factors)
    _full_laws(report, theory, instance)
    _pair_laws(report, theory, factors, instance.object_payload)

    generation = verify_generation(theory, instance=instance)
    _count(report, 'generation')
    if not generation['pure_fragment']['equal']:
        _fail(report, 'generation_pure_fragment', missing=generation['pure_fragment']['missing'],
              extra=generation['pure_fragment']['extra'])
    if not generation['full']['equal']:
        _fail(report, 'generation_full', missing=generation['full']['missing'], extra=generation['full']['extra'])
    report['notes'].append({'note': 'instance', 'objects': len(instance.objects), 'morphisms': len(instance.sources)})
    return report


def pmcat_suite(theory, lattice=None, instance=None):
    """The partially-monoidal axioms on the bounded process instance"""
    lattice = lattice or enumerate_self_bicommutant(theory)
    report = _new_report('pmcat')
    instance = instance or extract_instance(theory, lattice=lattice)
    violations = check_partially_monoidal(instance, theory.limits)
    report['violations'].extend(v.to_dict() for v in violations)
    _count(report, 'instance_objects', len(instance.objects))
    _count(report, 'instance_morphisms', len(instance.sources))
    return report


def run_suites(theory, names):
    """
    Runs the named suites sharing one lattice and one process instance.

    Args:
        theory (GlobalTheory): the theory.
        names (Iterable[str]): suite names, or ``["all"]``.

    Returns:
        list[dict]: one report per suite, in the requested order.
    """
    names = list(SUITES) if 'all' in names else list(names)
    lattice = enumerate_self_bicommutant(theory)
    instance = None
    reports = []
    for name in names:
        if name in ('processes', 'pmcat') and instance is None:
            instance = extract_instance(theory, lattice=lattice)
        if name == 'lattice':
            reports.append(lattice_suite(theory, lattice))
        elif name == 'states':
            reports.append(states_suite(theory, lattice))
        elif name == 'systems':
            reports.append(systems_suite(theory, lattice))
        elif name == 'processes':
            reports.append(processes_suite(theory, lattice, instance))
        elif name == 'pmcat':
            reports.append(pmcat_suite(theory, lattice, instance))
        else:
            raise ValueError(f"Unknown suite {name}")
        logging.info(f"Suite {name}: {len(reports[-1]['violations'])} violations")
    return reports

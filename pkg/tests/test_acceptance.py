"""End-to-end acceptance criteria, each at its stated tolerance.

Every test records one ``PASS``/``FAIL`` line; they are printed together in
the terminal summary (see ``conftest.py``) and also echoed to stdout.
"""

import itertools
import math
import time

import numpy as np
from deltatree.errors import NotZeroHyperbolic
from deltatree.formats import emit_edge_list, emit_newick, parse_edge_list, parse_newick
from deltatree.generators import (
    cycle_graph,
    perturbed_tree_metric,
    poincare_space,
    radial_space,
    random_connected_graph,
    random_euclidean,
    random_radial_points,
    random_tree,
    sample_poincare,
)
from deltatree.geodesic_graph import all_pairs_shortest, delta_thin, thin_relations
from deltatree.hyperbolicity import (
    _probe_subsets,
    delta_four_point,
    delta_gromov,
    four_point_value,
)
from deltatree.metric_space import build_space, diameter, subspace, validate_metric
from deltatree.metric_tree import (
    check_gluing,
    leaf_metric,
    nonexpansiveness_probe,
    project_onto_subtree,
    random_point,
    random_subtree,
    tree_distance,
    tree_from_graph,
)
from deltatree.tree_realization import realize_tree, verify_embedding

from oracles import cycle_matrix, four_point_delta, gromov_delta

RESULTS: list[str] = []


def record(num, title, ok, detail):
    line = f"criterion {num:>2} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


# corpora, shared between criteria (criterion 10 reuses 1-5, criterion 11 reuses 2)


def corpus_mixed():
    rng = np.random.default_rng(1)
    out = []
    for k in range(500):
        n = int(rng.integers(1, 11))
        kind = k % 3
        if kind == 0:
            out.append(random_euclidean(n, 1000 + k, dim=int(rng.integers(1, 5))))
        elif kind == 1:
            out.append(all_pairs_shortest(random_connected_graph(n, 2000 + k, float(rng.uniform(0, 0.6)))))
        else:
            out.append(perturbed_tree_metric(n, 3000 + k, noise=float(rng.uniform(0.01, 0.5))))
    return out


def corpus_trees():
    rng = np.random.default_rng(2)
    return [random_tree(int(rng.integers(1, 51)), 4000 + k) for k in range(100)]


def corpus_cycles():
    return {n: build_space(range(n), cycle_matrix(n)) for n in (4, 5, 6)}


def corpus_radial():
    rng = np.random.default_rng(4)
    return [radial_space(random_radial_points(int(rng.integers(1, 16)), 5000 + k)) for k in range(50)]


def corpus_poincare():
    return [poincare_space(sample_poincare(8, 6000 + k)) for k in range(200)]


def test_c01_gromov_equals_four_point():
    spaces = corpus_mixed()
    t0 = time.perf_counter()
    worst = max(abs(delta_gromov(s).delta - delta_four_point(s).delta) for s in spaces)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed <= 10.0
    assert record(1, "delta_gromov == delta_four_point", ok,
                  f"500 spaces, max |diff| {worst:.3g} (<= 1e-9), {elapsed:.2f}s (<= 10s)")


def test_c02_trees_are_zero_hyperbolic():
    spaces = [all_pairs_shortest(g) for g in corpus_trees()]
    t0 = time.perf_counter()
    worst = max(delta_four_point(s).delta for s in spaces)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed <= 30.0
    assert record(2, "tree metrics have delta 0", ok,
                  f"100 trees n<=50, max delta {worst:.3g} (<= 1e-9), {elapsed:.2f}s (<= 30s)")


def test_c03_cycle_values():
    expected = {4: 1.0, 5: 0.5, 6: 1.0}
    errs = []
    for n, s in corpus_cycles().items():
        brute = four_point_delta(cycle_matrix(n))
        brute3 = gromov_delta(cycle_matrix(n))
        got = delta_four_point(s).delta
        errs += [abs(got - brute), abs(got - expected[n]), abs(brute3 - expected[n])]
    worst = max(errs)
    assert record(3, "cycle values C4=1, C5=0.5, C6=1", worst <= 1e-12,
                  f"max error vs brute force {worst:.3g} (<= 1e-12)")


def test_c04_radial_metric():
    spaces = corpus_radial()
    valid = all(validate_metric(s).passed for s in spaces)
    worst = max(delta_four_point(s).delta for s in spaces)
    assert record(4, "radial metric is a valid tree metric", valid and worst <= 1e-9,
                  f"50 sets n<=15, all valid={valid}, max delta {worst:.3g} (<= 1e-9)")


def test_c05_poincare_bound():
    bound = 3 * 0.5 * math.log(3) + 1e-6
    worst = max(delta_gromov(s).delta for s in corpus_poincare())
    assert record(5, "Poincare disk delta bound", worst <= bound,
                  f"200 samples n=8, max delta_gromov {worst:.4f} (<= {bound:.4f})")


def test_c06_thin_relations():
    r = 0.05
    trees = [random_tree(n, 7000 + n) for n in range(2, 31)]
    graphs = [(f"tree{g.n}", g, True) for g in trees]
    graphs += [(f"C{n}", cycle_graph(n), False) for n in range(4, 9)]
    failures = []
    for name, g, is_tree in graphs:
        checks, _, thin = thin_relations(g, r, tol=1e-9)
        failures += [f"{name}:{c.name}" for c in checks if not c.holds]
        if is_tree and thin.delta > r + 1e-9:
            failures.append(f"{name}:thin_le_r")
    ok = not failures
    assert record(6, "factor-3 thin relations and tripod bound", ok,
                  f"{len(trees)} trees n<=30 + C4..C8 at r={r}; failures: {failures or 'none'}")


def test_c07_projection_nonexpansive():
    rng = np.random.default_rng(7)
    pool = [tree_from_graph(random_tree(int(rng.integers(2, 31)), 8000 + k)) for k in range(50)]
    worst, idempotent, probes = 0.0, True, 0
    while probes < 10_000:
        t = pool[int(rng.integers(len(pool)))]
        C = random_subtree(t, rng)
        p, q = random_point(t, rng), random_point(t, rng)
        if tree_distance(t, p, q) == 0:
            continue
        probes += 1
        worst = max(worst, nonexpansiveness_probe(t, C, [(p, q)]))
        P = project_onto_subtree(t, p, C)
        idempotent &= project_onto_subtree(t, P, C) == P
    ok = worst <= 1 + 1e-9 and idempotent
    assert record(7, "projection nonexpansive and idempotent", ok,
                  f"{probes} probes, max ratio {worst!r} (<= 1+1e-9), idempotent={idempotent}")


def test_c08_gluing():
    rng = np.random.default_rng(8)
    trees = [tree_from_graph(random_tree(int(rng.integers(1, 26)), 9000 + k)) for k in range(50)]
    bad = 0
    total = 0
    for t in trees:
        for y, x, z in itertools.permutations(range(t.n), 3):
            total += 1
            bad += not check_gluing(t, y, x, z)
    assert record(8, "segment gluing", bad == 0, f"50 trees n<=25, {total} triples, {bad} failures")


def test_c09_realization():
    rng = np.random.default_rng(9)
    worst = 0.0
    for k in range(100):
        t = tree_from_graph(random_tree(int(rng.integers(1, 21)), 10000 + k))
        labels = [t.labels[i] for i in rng.permutation(t.n)]
        space = leaf_metric(t, labels)
        worst = max(worst, verify_embedding(realize_tree(space), space))
    rejected = []
    for n, expected in ((4, 1.0), (5, 0.5)):
        s = build_space(range(n), cycle_matrix(n))
        try:
            realize_tree(s)
            rejected.append(False)
        except NotZeroHyperbolic as exc:
            wit = tuple(exc.witness)
            rejected.append(
                exc.delta == expected
                and wit == delta_four_point(s).quadruple
                and four_point_value(s, wit) == expected
            )
    ok = worst <= 1e-6 and all(rejected)
    assert record(9, "tree realization round trip", ok,
                  f"100 tree metrics n<=20, max error {worst:.3g} (<= 1e-6); "
                  f"C4/C5 rejected with witness: {rejected}")


def test_c10_diameter_and_subspaces():
    spaces = corpus_mixed() + [all_pairs_shortest(g) for g in corpus_trees()]
    spaces += list(corpus_cycles().values()) + corpus_radial() + corpus_poincare()
    diam_slack = math.inf
    mono_slack = math.inf
    for k, s in enumerate(spaces):
        diam_slack = min(diam_slack, diameter(s) - delta_gromov(s).delta)
        parent = delta_four_point(s).delta
        for idx in _probe_subsets(s.n, 10, seed=k):
            mono_slack = min(mono_slack, parent - delta_four_point(subspace(s, idx)).delta)
    ok = diam_slack >= -1e-9 and mono_slack >= -1e-9
    assert record(10, "diameter bound and subspace monotonicity", ok,
                  f"{len(spaces)} spaces, min slack diameter {diam_slack:.3g}, "
                  f"subspace {mono_slack:.3g} (>= -1e-9)")


def test_c11_parser_round_trips():
    stable = 0
    graphs = corpus_trees()
    for g in graphs:
        nwk = emit_newick(tree_from_graph(g))
        edges = emit_edge_list(g) if g.edges else None
        ok_n = emit_newick(parse_newick(nwk)) == nwk
        ok_e = edges is None or emit_edge_list(parse_edge_list(edges)) == edges
        stable += ok_n and ok_e
    t = parse_newick("((A:1,B:1):1,C:2);")
    dac = float(t.distances[t.index("A"), t.index("C")])
    ok = stable == len(graphs) and dac == 4.0
    assert record(11, "Newick and edge-list round trips", ok,
                  f"{stable}/{len(graphs)} byte-stable, d(A,C) = {dac!r} (== 4)")


def test_c12_performance():
    space = random_euclidean(300, 12)
    warm = random_euclidean(8, 0)
    lines, ok = [], True
    for name, fn in (("four-point", delta_four_point), ("gromov", delta_gromov)):
        fn(warm, 1)  # load compiled kernels before timing
        t0 = time.perf_counter()
        one = fn(space, 1)
        t1 = time.perf_counter()
        eight = fn(space, 8)
        t2 = time.perf_counter()
        same = repr(one) == repr(eight)
        ok &= (t1 - t0) <= 60 and (t2 - t1) <= 15 and same
        lines.append(f"{name} 1 worker {t1 - t0:.1f}s (<= 60s), 8 workers {t2 - t1:.1f}s (<= 15s), "
                     f"identical={same}")
    assert record(12, "n=300 full scan", ok, "; ".join(lines))

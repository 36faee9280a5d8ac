"""Acceptance suite: one test per criterion, named test_criterion_<n>_*.

conftest.py prints a PASS/FAIL line per criterion at the end of the run.
"""

import io
import itertools
import math
import time

import numpy as np
import pytest

from goldman_angles import angles as A, cli, goldman as Gd, group as G, surface as S, twist as T
from goldman_angles.hypgeom import (
    axis, axis_of_product, compose, dist, translation_length,
)
from helpers import crossing_pair, hyperbolic_with, iwasawa


def cyclic_classes(max_len):
    """One cyclically reduced representative per conjugacy class, shortest first."""
    seen, out = set(), []
    for n in range(1, max_len + 1):
        for t in itertools.product("aAbB", repeat=n):
            w = "".join(t)
            c = G.conj_class(w)
            if G.cyclic_reduce(w)[0] == w and c not in seen:
                seen.add(c)
                out.append(w)
    return out


def random_hyperbolic(rng):
    g = iwasawa(rng.uniform(0, 2 * math.pi), rng.uniform(-1.5, 1.5), rng.uniform(-2, 2))
    return hyperbolic_with(rng.uniform(0.2, 5.0), g)


# ---------------------------------------------------------------- 1


def test_criterion_1_axis_of_product():
    rng = np.random.default_rng(20240101)
    start = time.perf_counter()
    checked, worst_end, worst_len = 0, 0.0, 0.0
    while checked < 1000:
        x, y = random_hyperbolic(rng), random_hyperbolic(rng)
        if not crossing_pair(x, y):
            continue
        built, q, r = axis_of_product(x, y)
        true = axis(compose(x, y))
        worst_end = max(worst_end, built.start.separation(true.start), built.end.separation(true.end))
        worst_len = max(worst_len, abs(2 * dist(q, r) - translation_length(compose(x, y))))
        checked += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {checked} pairs, endpoint dev {worst_end:.2e}, length dev {worst_len:.2e}, {elapsed:.2f}s")
    assert worst_end <= 1e-8 and worst_len <= 1e-8
    assert elapsed < 5.0


# ---------------------------------------------------------------- 2

MIDPOINT_PAIRS = [
    ("a", "b"), ("a", "bbAbA"), ("b", "aab"), ("a", "bAbAB"), ("ab", "b"), ("a", "bbb"), ("a", "abb"),
    ("b", "aaB"), ("b", "aabA"), ("a", "bAbb"), ("b", "abAA"), ("a", "bbab"), ("ab", "bbA"),
    ("a", "bbbAb"), ("b", "aaBaa"), ("a", "babbb"), ("aB", "bbA"), ("a", "bbaBB"), ("b", "AAbAA"),
    ("ab", "aBB"), ("a", "bAbbAb"),
]


def test_criterion_2_midpoints_of_the_lift():
    # moderate lengths: far arcs of long curves run into the 1e-14 floor on heights
    sampler = S.MetricSampler(11, length_range=(0.8, 1.6), twist_range=(-1.0, 1.0))
    reps = [S.sample_metric(sampler, i) for i in range(3)]
    assert len(MIDPOINT_PAIRS) >= 20 and all(len(x) <= 6 and len(y) <= 6 for x, y in MIDPOINT_PAIRS)
    start = time.perf_counter()
    worst, n_records = 0.0, 0
    for rep in reps:
        for x, y in MIDPOINT_PAIRS:
            for r in Gd.goldman_bracket(rep, x, y).records:
                offsets = Gd.midpoint_offsets(rep, x, y, r, 3)
                assert len(offsets) == 7
                worst = max(worst, max(offsets))
                n_records += 1
    elapsed = time.perf_counter() - start
    print(f"criterion 2: {n_records} records, worst midpoint offset {worst:.2e}, {elapsed:.2f}s")
    assert n_records > 0 and worst <= 1e-8
    assert elapsed < 30.0


# ---------------------------------------------------------------- 3 and 4

CORPUS_METRICS = [S.holed_torus(2.0, 0.3), S.holed_torus(1.2, -0.8), S.holed_torus(3.1, 1.4)]
CORPUS_X = ["a", "b", "ab"]


@pytest.fixture(scope="module")
def corpus():
    out = []
    for rep in CORPUS_METRICS:
        for x in CORPUS_X:
            for y in cyclic_classes(4):
                bs = Gd.goldman_bracket(rep, x, y, split_triple=True)
                if bs.records:
                    out.append((rep, x, y, bs.records))
    return out


def test_criterion_3_cosine_rule_coherence(corpus):
    rows = [row for rep, x, y, recs in corpus for row in A.record_angles(rep, x, y, recs)]
    worst = max(r.coherence_residual for r in rows)
    print(f"criterion 3: {len(rows)} records, worst |theta - from lengths| {worst:.2e}")
    assert len(rows) >= 200
    assert worst <= 1e-8


def test_criterion_4_equal_terms_equal_angles():
    sampler = S.MetricSampler(4)
    reps = [S.sample_metric(sampler, i) for i in range(5)]
    worst, shared, probes = 0.0, 0, []
    for x in CORPUS_X:
        for y in cyclic_classes(4):
            reports = [A.angle_report(rep, x, y, str(i), records=Gd.goldman_bracket(rep, x, y, split_triple=True).records)
                       for i, rep in enumerate(reps)]
            for rpt in reports:
                assert rpt.passed, (x, y, rpt.metric_id, rpt.groups)
                worst = max(worst, rpt.max_deviation)
                counts = {}
                for row in rpt.rows:
                    counts[row.record.term_class] = counts.get(row.record.term_class, 0) + 1
                shared += sum(1 for c in counts.values() if c > 1)
            probes += A.contrapositive_probe(reports)
    print(f"criterion 4: {shared} shared-class groups over {len(reps)} metrics, worst spread {worst:.2e}")
    assert shared > 0
    assert worst <= 1e-8
    assert probes == []


# ---------------------------------------------------------------- 5


def test_criterion_5_terms_count_intersections():
    rep = S.holed_torus(2.0, 0.3)
    words = cyclic_classes(5)
    start = time.perf_counter()
    bad = []
    for y in words:
        bs = Gd.goldman_bracket(rep, "a", y, cap=14, split_triple=True)
        i = Gd.geometric_intersection_number(rep, "a", y, cap=14, split_triple=True)
        if Gd.term_count(bs) != i:
            bad.append((y, Gd.term_count(bs), i))
    elapsed = time.perf_counter() - start
    print(f"criterion 5: {len(words)} classes, {len(bad)} mismatches, {elapsed:.1f}s")
    assert len(words) == 102
    assert bad == []
    assert elapsed < 300.0


# ---------------------------------------------------------------- 6 and 7

TWIST_CONFIGS = [
    (S.holed_torus(2.0, 0.0), "b"),
    (S.holed_torus(2.0, 0.0), "bab"),
    (S.holed_torus(2.0, 0.3), "abb"),
    (S.holed_torus(2.0, 0.3), "abbaBB"),
    (S.holed_torus(1.3, -0.4), "b"),
    (S.holed_torus(1.3, -0.4), "bAbb"),
    (S.holed_torus(2.7, 0.9), "bbab"),
    (S.holed_torus(2.7, 0.9), "abbABB"),
    (S.holed_torus(1.0, 1.5), "aab"),
    (S.holed_torus(1.0, 1.5), "bbb"),
    (S.holed_torus(3.5, -1.2), "bab"),
    (S.holed_torus(3.5, -1.2), "aBBAbb"),
]


@pytest.fixture(scope="module")
def sweeps():
    grid = T.parse_grid("-2:2:0.05")
    return [T.sweep(rep, y, grid, split_triple=True) for rep, y in TWIST_CONFIGS]


def test_criterion_6_phi_decreases_theta_follows_sign(sweeps):
    assert len(sweeps) >= 10
    records, signs = 0, set()
    for sw in sweeps:
        assert len(sw.grid) == 81
        mono = T.monotonicity_check(sw, 1e-10)
        theta = T.theta_direction_check(sw, 1e-10)
        assert all(mono.values()), (sw.y, mono)
        assert all(theta.values()), (sw.y, theta)
        records += len(sw.record_ids)
        signs |= {int(s) for s in sw.signs[:, 0]}
    print(f"criterion 6: {len(sweeps)} configurations, {records} tracked records, signs {sorted(signs)}")
    assert signs == {-1, 1}


def test_criterion_7_endpoint_drift():
    grid = T.parse_grid("-2:2:0.05")
    pairs = T.spanning_pairs(grid)
    directions = set()
    n = 0
    for rep, y in TWIST_CONFIGS:
        for r in Gd.goldman_bracket(rep, "a", y, split_triple=True).records:
            v = T.endpoint_drift(rep, y, r.conjugator, pairs)
            assert v.passed, (y, r.conjugator)
            directions.add(v.direction)
            n += 1
    print(f"criterion 7: {n} tracked conjugates, {len(pairs)} s-pairs each, directions {sorted(directions)}")
    assert len(directions) == 1 and 0 not in directions


# ---------------------------------------------------------------- 8


def test_criterion_8_disjoint_curves_give_zero():
    cases = []
    for ls in [(2.0, 2.0, 2.0), (1.0, 2.0, 3.0), (0.5, 4.0, 1.5)]:
        rep = S.pants(*ls)
        for x, y in itertools.permutations(["a", "b", "ab", "A", "B", "BA"], 2):
            if G.conj_class(x) != G.conj_class(y):
                cases.append((rep, x, y))
    torus = S.holed_torus(2.0, 0.3)
    for x, y in [("a", "aa"), ("a", "AAA"), ("ab", "abab"), ("aB", "BaBa"), ("abb", "ABBABB"), ("b", "bbbb")]:
        cases.append((torus, x, y))
        cases.append((S.pants(1.0, 2.0, 3.0), x, y))
    for rep, x, y in cases:
        bs = Gd.goldman_bracket(rep, x, y)
        assert bs.terms == {} and bs.records == [], (rep.kind, x, y)
        assert Gd.geometric_intersection_number(rep, x, y) == 0
    print(f"criterion 8: {len(cases)} zero-intersection instances, all empty")


# ---------------------------------------------------------------- 9

CLI_RUNS = [
    ["surface", "--kind", "holed-torus", "--length", "2", "--twist", "0.3"],
    ["surface", "--kind", "pants", "--lengths", "1,2,3"],
    ["bracket", "--x", "a", "--y", "bab"],
    ["bracket", "--kind", "pants", "--lengths", "2,2,2", "--x", "a", "--y", "b"],
    ["verify", "--x", "a", "--y", "b,bab,abbb", "--metrics", "5"],
    ["twist", "--y", "bab", "--grid", "-2:2:0.05", "--crosscheck"],
    ["svg", "--x", "a", "--y", "bab", "--record", "1", "--arcs", "3"],
]


def test_criterion_9_cli_determinism(tmp_path):
    for k, argv in enumerate(CLI_RUNS):
        outs = []
        for rep in range(2):
            path = tmp_path / f"{k}-{rep}.out"
            buf = io.StringIO()
            code = cli.main(argv + ["--out", str(path)], stdout=buf)
            assert code == 0, argv
            outs.append((path.read_bytes(), buf.getvalue()))
        assert outs[0] == outs[1], argv
        assert outs[0][0]
    print(f"criterion 9: {len(CLI_RUNS)} commands, byte-identical across runs")

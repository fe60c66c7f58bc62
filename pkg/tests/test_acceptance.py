"""Acceptance suite: one test per criterion, at the stated tolerances.

Statistical criteria run at fixed seeds so the suite is reproducible.
Each test records a single PASS/FAIL line (echoed in the terminal
summary) before asserting.
"""

import itertools
import math
import time

import numpy as np
from scipy.integrate import quad

from conftest import record_criterion

from planeforest import (
    CodingFunction,
    PlaneTree,
    chi_square_uniform,
    contour_function,
    count_forests,
    count_mcf,
    cyclic_shift,
    degree_vector,
    first_visit_times,
    is_first_passage,
    ks_one_sample,
    ks_two_sample,
    make_degree_sequence,
    mcf_from_walk,
    mcf_preimages,
    metric_snapshot,
    rng_from_seed,
    rotation_index,
    sample_forest,
    sample_limit_vector,
    sample_mcf,
    sample_tau_exact,
    substream,
    forest_to_mcf,
    tau_cdf,
    tau_density,
    tree_graph_metric,
    validate,
    walk_from_mcf,
)
from planeforest.errors import CapExceeded
from planeforest.forest_codec import (
    bridge_from_marked_tree,
    dfw_decode,
    dfw_encode,
    enumerate_forests,
    enumerate_walks,
    marked_tree_from_bridge,
)
from planeforest.lattice_paths import LatticeBridge
from planeforest.degseq import geometric_profile
from planeforest.verify import (
    experiment_concentration,
    experiment_degrees,
    experiment_largest_marked,
    experiment_tree_sizes,
    experiment_walk,
    _replicate_sizes,
)

SEED = 2024
N_LARGE = 200_000
CN_LARGE = 71  # floor(n^0.35) at n = 2e5
SIGMA = math.sqrt(2.0)


def _partitions(m, max_parts, smallest=1):
    if m == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(smallest, m + 1):
        for rest in _partitions(m - first, max_parts - 1, first):
            yield (first,) + rest


def _all_degree_sequences(max_n):
    for n in range(1, max_n + 1):
        for m in range(n):  # sum of degrees; c = n - m >= 1
            for parts in _partitions(m, n):
                counts = {0: n - len(parts)}
                for part in parts:
                    counts[part] = counts.get(part, 0) + 1
                yield validate(counts)


def test_criterion_01_codec_exhaustiveness():
    t0 = time.perf_counter()
    n_seq = n_walks = 0
    for s in _all_degree_sequences(8):
        n_seq += 1
        walks = list(enumerate_walks(s))
        expected_mcf = math.factorial(s.n)
        for cnt in s.counts.values():
            expected_mcf //= math.factorial(cnt)
        assert count_mcf(s) == expected_mcf == len(walks)
        assert count_forests(s) == expected_mcf * s.c // s.n
        for w in walks:
            n_walks += 1
            # MCF <-> coding walk
            m = mcf_from_walk(w)
            assert walk_from_mcf(m).values == w.values
            # marked tree <-> lattice bridge (the walk's last segment)
            last = m.forest.trees[-1]
            bridge = bridge_from_marked_tree(last, m.mark[1])
            tree, pos = marked_tree_from_bridge(bridge)
            assert (tree, pos) == (last, m.mark[1])
            # depth-first walk: tree <-> first-passage bridge
            for t in m.forest.trees:
                assert dfw_decode(dfw_encode(t)) == t
            # forest <-> MCF: every preimage maps back
            for f, mark in mcf_preimages(m):
                assert forest_to_mcf(f, mark) == m
        forests = list(enumerate_forests(s, cap=s.n))
        assert len(forests) == count_forests(s)
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60.0
    record_criterion(
        1, ok, f"4 codecs round-trip on {n_walks} walks over {n_seq} degree "
        f"sequences (n<=8), counts exact; {elapsed:.1f}s"
    )
    assert ok


def test_criterion_02_rotation_lemma_exhaustive():
    t0 = time.perf_counter()
    total = 0
    rng = rng_from_seed(SEED)
    for L in range(1, 13):
        codes = np.arange(4**L, dtype=np.int64)
        incs = np.empty((len(codes), L), dtype=np.int8)
        rem = codes.copy()
        for j in range(L - 1, -1, -1):
            incs[:, j] = (rem % 4) - 1
            rem //= 4
        incs = incs[incs.sum(axis=1) == -1]
        if not len(incs):
            continue
        total += len(incs)
        S = np.cumsum(incs, axis=1).astype(np.int16)  # values b(1..L)
        # extended values b(0..2L-1), with b(L+i) = b(i) - 1
        shat = np.concatenate([np.zeros((len(S), 1), np.int16), S[:, :-1]], axis=1)
        ext = np.concatenate([shat, shat - 1], axis=1)
        # anchor k gives an FPB iff b stays >= b(k) on the next L-1 steps
        hits = np.zeros(len(S), dtype=np.int64)
        winners = np.full(len(S), -1, dtype=np.int64)
        for k in range(L):
            if L > 1:
                window = ext[:, k + 1 : k + L].min(axis=1)
                is_fpb = window >= ext[:, k]
            else:
                is_fpb = np.ones(len(S), dtype=bool)
            hits += is_fpb
            winners[is_fpb & (winners < 0)] = k
        assert (hits == 1).all(), f"non-unique FPB shift at length {L}"
        # the unique shift is the first-argmin one
        argmin_shift = (np.argmin(S, axis=1) + 1) % L
        assert np.array_equal(winners, argmin_shift)
        # spot-check a few bridges against the object-level API
        for row in rng.choice(len(S), size=min(20, len(S)), replace=False):
            b = LatticeBridge((0,) + tuple(int(x) for x in S[row]))
            r = rotation_index(b)
            assert is_first_passage(cyclic_shift(b, r))
            assert r % L == winners[row]
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60.0
    record_criterion(
        2, ok, f"unique first-argmin FPB shift on all {total} bridges of "
        f"length <= 12; {elapsed:.1f}s"
    )
    assert ok


def test_criterion_03_sampler_uniformity():
    s1 = validate({0: 4, 2: 2})
    rng = rng_from_seed(SEED)
    forest_counts = {}
    for _ in range(10_000):
        key = sample_forest(s1, rng).to_json()
        forest_counts[key] = forest_counts.get(key, 0) + 1
    assert len(forest_counts) == 5
    _, p_forest = chi_square_uniform(list(forest_counts.values()))

    s2 = validate({0: 3, 1: 2, 3: 1})
    mcf_counts = {}
    for _ in range(10_000):
        key = sample_mcf(s2, rng).to_json()
        mcf_counts[key] = mcf_counts.get(key, 0) + 1
    assert len(mcf_counts) == 60
    _, p_mcf = chi_square_uniform(list(mcf_counts.values()))

    ok = p_forest > 0.001 and p_mcf > 0.001
    record_criterion(
        3, ok, f"chi^2 uniformity p-values: forests {p_forest:.3f}, MCFs {p_mcf:.3f}"
    )
    assert ok


def test_criterion_04_tau_law():
    t0 = time.perf_counter()
    s = make_degree_sequence(geometric_profile(), N_LARGE, CN_LARGE, SEED)
    dvec = degree_vector(s)
    reps = 300
    small_mass = np.empty(reps)
    for rep in range(reps):
        _, _, sizes, _ = _replicate_sizes(dvec, s.c, substream(SEED, rep))
        small_mass[rep] = (N_LARGE - sizes.max()) / CN_LARGE**2
    ks = ks_one_sample(small_mass, lambda t: tau_cdf(np.asarray(t), SIGMA))
    elapsed = time.perf_counter() - t0
    ok = ks <= 0.12 and elapsed < 120.0
    record_criterion(
        4, ok, f"KS of (n-|T1|)/cn^2 vs tau(1/sigma) CDF = {ks:.4f} "
        f"(tol 0.12, {reps} reps); {elapsed:.1f}s"
    )
    assert ok


def test_criterion_05_ranked_sizes():
    report = experiment_tree_sizes(
        geometric_profile(), N_LARGE, CN_LARGE, reps=300, top_j=2,
        limit_reps=3000, dt=1e-4, seed=SEED,
    )
    ks = report.stats["ks_per_coordinate"][0]
    ok = ks <= 0.12 and report.runtime < 300.0
    record_criterion(
        5, ok, f"two-sample KS of |T2|/cn^2 vs top excursion length = {ks:.4f} "
        f"(tol 0.12, dt=1e-4, 3000 limit reps); {report.runtime:.1f}s"
    )
    assert ok


def test_criterion_06_walk_convergence():
    report = experiment_walk(
        geometric_profile(), N_LARGE, CN_LARGE, reps=1000,
        t_points=(0.5, 1.0, 2.0), seed=SEED,
    )
    ks = report.stats["ks"]
    ratio = report.stats["variance_ratio_2_over_1"]
    worst = max(ks.values())
    ok = worst <= 0.06 and 1.7 <= ratio <= 2.3 and report.runtime < 120.0
    record_criterion(
        6, ok, f"KS vs N(0, sigma^2 t) at t=0.5/1/2: "
        f"{ks['0.5']:.4f}/{ks['1.0']:.4f}/{ks['2.0']:.4f} (tol 0.06); "
        f"var ratio {ratio:.3f} in [1.7, 2.3]; {report.runtime:.1f}s"
    )
    assert ok


def test_criterion_07_largest_tree_identification():
    report = experiment_largest_marked(
        geometric_profile(), N_LARGE, CN_LARGE, reps=1000, seed=SEED
    )
    freq = report.stats["frequency"]
    ok = freq >= 0.95
    record_criterion(
        7, ok, f"frequency of marked tree = largest tree: {freq:.4f} (needs >= 0.95)"
    )
    assert ok


def test_criterion_08_empirical_degrees():
    p = geometric_profile()
    cn_small = int(50_000**0.35)  # 44: same cn-exponent at the smaller n
    small = experiment_degrees(p, 50_000, cn_small, reps=500,
                               degrees=(0, 1, 2), trees=(1, 2), seed=SEED)
    large = experiment_degrees(p, N_LARGE, CN_LARGE, reps=500,
                               degrees=(0, 1, 2), trees=(1, 2), seed=SEED)
    decreases = all(
        large.stats["p_quantiles"][k] < small.stats["p_quantiles"][k]
        for k in small.stats["p_quantiles"]
    ) and all(
        large.stats["sigma_sq_quantiles"][k] < small.stats["sigma_sq_quantiles"][k]
        for k in small.stats["sigma_sq_quantiles"]
    )
    l1_quantiles = [v for k, v in large.stats["p_quantiles"].items() if k.endswith("l=1")]
    l1_quantiles.append(large.stats["sigma_sq_quantiles"]["l=1"])
    worst_l1 = max(l1_quantiles)
    ok = decreases and worst_l1 <= 0.01
    record_criterion(
        8, ok, f"0.99-quantiles decrease from n=5e4 to n=2e5: {decreases}; "
        f"worst l=1 quantile at n=2e5: {worst_l1:.4f} (needs <= 0.01)"
    )
    assert ok


def test_criterion_09_concentration_bound():
    s = make_degree_sequence(geometric_profile(), N_LARGE, CN_LARGE, SEED)
    report = experiment_concentration(s, degree=0, thresholds=(0.3, 0.5),
                                      reps=10_000, seed=SEED)
    checks = []
    for t in ("0.3", "0.5"):
        bound = report.stats["bound"][t]
        allowance = bound + 3 * math.sqrt(bound / 10_000)
        checks.append(report.stats["exceedance"][t] <= allowance)
    ok = all(checks)
    record_criterion(
        9, ok, f"sup-exceedance frequencies {report.stats['exceedance']} within "
        f"exp(-3t^2 cn/5) + 3 sqrt(bound/reps) at t=0.3, 0.5"
    )
    assert ok


def test_criterion_10_limit_law_internals():
    samples = sample_tau_exact(SIGMA, rng_from_seed(SEED), size=100_000)
    ks_exact = ks_one_sample(samples, lambda t: tau_cdf(np.asarray(t), SIGMA))

    integral, _ = quad(lambda t: tau_density(t, SIGMA), 0, np.inf)

    def top_lengths(dt, base, reps):
        out = np.empty(reps)
        got = idx = 0
        while got < reps:
            try:
                rep = sample_limit_vector(SIGMA, 1, dt, substream(base, idx),
                                          t_cap=60.0, keep_subpaths=False)
            except CapExceeded:
                idx += 1
                continue
            out[got] = rep.lengths[0]
            got += 1
            idx += 1
        return out

    a = top_lengths(1e-4, SEED + 1, 12_000)
    b = top_lengths(5e-5, SEED + 2, 12_000)
    ks_halving = ks_two_sample(a, b)

    ok = ks_exact <= 0.01 and abs(integral - 1.0) <= 1e-6 and ks_halving <= 0.02
    record_criterion(
        10, ok, f"exact-sampler KS {ks_exact:.4f} (tol 0.01); density integral "
        f"err {abs(integral - 1.0):.2e} (tol 1e-6); dt-halving KS {ks_halving:.4f} (tol 0.02)"
    )
    assert ok


def _four_point_ok(dist, tol=1e-9):
    n = len(dist)
    for x, y, z, w in itertools.combinations(range(n), 4):
        sums = sorted(
            [dist[x, y] + dist[z, w], dist[x, z] + dist[y, w], dist[x, w] + dist[y, z]]
        )
        if sums[2] > sums[1] + tol:
            return False
    return True


def _axioms_ok(dist, tol=1e-9):
    if np.abs(np.diag(dist)).max() > tol:
        return False
    if np.abs(dist - dist.T).max() > tol:
        return False
    if (dist < -tol).any():
        return False
    n = len(dist)
    for k in range(n):
        if (dist > dist[:, [k]] + dist[[k], :] + tol).any():
            return False
    return True


def _all_plane_trees(max_n):
    def rec(prefix, balance, remaining):
        if remaining == 0:
            if balance == -1:
                yield PlaneTree(tuple(prefix))
            return
        for d in range(remaining):
            if balance + d - 1 >= 0 or remaining == 1:
                prefix.append(d)
                yield from rec(prefix, balance + d - 1, remaining - 1)
                prefix.pop()

    for n in range(1, max_n + 1):
        yield from rec([], 0, n)


def test_criterion_11_real_tree_properties():
    rng = rng_from_seed(SEED)
    snapshots_ok = True
    for _ in range(1000):
        steps = rng.standard_normal(64)
        walk = np.concatenate([[0.0], np.cumsum(steps)])
        g = CodingFunction(np.linspace(0.0, 1.0, 65),
                           walk - np.minimum.accumulate(walk))
        snap = metric_snapshot(g, rng.uniform(0.0, 1.0, size=6))
        if not (_axioms_ok(snap.dist) and _four_point_ok(snap.dist)):
            snapshots_ok = False
            break

    trees_ok = True
    n_trees = 0
    for t in _all_plane_trees(8):
        n_trees += 1
        ms = tree_graph_metric(t)
        snap = metric_snapshot(contour_function(t), first_visit_times(t))
        if np.abs(ms.dist - snap.dist).max() != 0.0:
            trees_ok = False
            break
        if not (_axioms_ok(ms.dist) and _four_point_ok(ms.dist)):
            trees_ok = False
            break

    ok = snapshots_ok and trees_ok
    record_criterion(
        11, ok, f"pseudometric axioms + four-point on 1000 random coding "
        f"snapshots; contour/graph isometry exact on {n_trees} trees (n<=8)"
    )
    assert ok

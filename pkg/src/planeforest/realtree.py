"""Real trees coded by nonnegative functions, at finite resolution.

The coding pseudometric of a function g is
``d(s, t) = g(s) + g(t) - 2 * min g on [s, t]``; quotienting its zero set
yields a real tree.  Here everything is piecewise linear, so minima are
exact, and small metric spaces admit brute-force Gromov-Hausdorff search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import TooLarge
from .forest_codec import PlaneTree

_TRI_TOL = 1e-9


@dataclass(frozen=True)
class CodingFunction:
    """Piecewise-linear g >= 0 on an increasing grid with g(0) = 0."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.shape != v.shape or t.ndim != 1 or len(t) == 0:
            raise ValueError("times and values must be equal-length 1-d arrays")
        if t[0] != 0.0 or v[0] != 0.0:
            raise ValueError("coding function must start at (0, 0)")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        if np.any(v < 0):
            raise ValueError("coding function must be nonnegative")

    def __call__(self, x: float) -> float:
        return float(np.interp(x, self.times, self.values))

    @property
    def support(self) -> float:
        return float(self.times[-1])

    def window_min(self, a: float, b: float) -> float:
        """Exact minimum of g on [a, b] (linear interpolation between knots)."""
        if a > b:
            a, b = b, a
        lo = float(np.interp(a, self.times, self.values))
        hi = float(np.interp(b, self.times, self.values))
        m = min(lo, hi)
        inside = (self.times > a) & (self.times < b)
        if inside.any():
            m = min(m, float(self.values[inside].min()))
        return m

    def to_csv(self) -> str:
        return "\n".join(f"{t},{v}" for t, v in zip(self.times, self.values))


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Distance matrix with optional probability masses."""

    dist: np.ndarray
    masses: np.ndarray | None = None

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=float)
        object.__setattr__(self, "dist", d)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValueError("distance matrix must be square")
        if not np.allclose(d, d.T, atol=_TRI_TOL) or np.abs(np.diag(d)).max() > _TRI_TOL:
            raise ValueError("matrix is not a metric: symmetry/diagonal")
        n = d.shape[0]
        for k in range(n):
            if np.any(d > d[:, k, None] + d[None, k, :] + _TRI_TOL):
                raise ValueError("triangle inequality violated")
        if self.masses is not None:
            m = np.asarray(self.masses, dtype=float)
            object.__setattr__(self, "masses", m)
            if m.shape != (n,) or abs(m.sum() - 1.0) > 1e-9 or np.any(m < 0):
                raise ValueError("masses must be a probability vector")

    @property
    def size(self) -> int:
        return self.dist.shape[0]

    def to_json(self) -> str:
        import json

        obj = {"dist": self.dist.tolist()}
        if self.masses is not None:
            obj["masses"] = self.masses.tolist()
        return json.dumps(obj)


def coding_pseudometric(g: CodingFunction, s: float, t: float) -> float:
    """d(s, t) = g(s) + g(t) - 2 * min of g between s and t."""
    return g(s) + g(t) - 2.0 * g.window_min(s, t)


def metric_snapshot(g: CodingFunction, sample_times) -> FiniteMetricSpace:
    """Pairwise coding distances at the sample times, zero-pairs identified.

    Masses are uniform over the sample times; identified points accumulate
    the mass of every time that maps to them.
    """
    times = list(sample_times)
    m = len(times)
    full = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            full[i, j] = full[j, i] = coding_pseudometric(g, times[i], times[j])
    # Quotient: group sample times at coding distance ~0.
    reps: list[int] = []
    group = np.empty(m, dtype=int)
    for i in range(m):
        for gi, r in enumerate(reps):
            if full[i, r] <= 1e-12:
                group[i] = gi
                break
        else:
            group[i] = len(reps)
            reps.append(i)
    k = len(reps)
    dist = full[np.ix_(reps, reps)]
    masses = np.bincount(group, minlength=k) / m
    return FiniteMetricSpace(dist, masses)


def tree_graph_metric(
    t: PlaneTree, scale: float = 1.0, mass_per_node: float | None = None
) -> FiniteMetricSpace:
    """Graph distances of a plane tree, rescaled, with uniform node masses."""
    n = t.size
    par = t.parents()
    depth = np.zeros(n, dtype=int)
    for v in range(1, n):  # lex order guarantees parent index < child index
        depth[v] = depth[par[v]] + 1
    dist = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            a, b = i, j
            da, db = depth[a], depth[b]
            while da > db:
                a, da = par[a], da - 1
            while db > da:
                b, db = par[b], db - 1
            while a != b:
                a, b = par[a], par[b]
                da -= 1
            dist[i, j] = dist[j, i] = depth[i] + depth[j] - 2 * da
    mass = 1.0 / n if mass_per_node is None else mass_per_node
    masses = np.full(n, mass)
    return FiniteMetricSpace(dist * scale, masses / masses.sum())


def contour_function(t: PlaneTree) -> CodingFunction:
    """Depth profile of the contour (Euler tour) exploration.

    2(|T|-1)+1 grid points at unit spacing.  Use
    :func:`first_visit_times` to sample one point per node.
    """
    depths = [0]
    children = t.children_lists()

    def tour(v: int, depth: int):
        for u in children[v]:
            depths.append(depth + 1)
            tour(u, depth + 1)
            depths.append(depth)

    tour(0, 0)
    times = np.arange(len(depths), dtype=float)
    return CodingFunction(times, np.array(depths, dtype=float))


def first_visit_times(t: PlaneTree) -> np.ndarray:
    """Contour time of the first visit to each node, in lex order."""
    out = np.zeros(t.size)
    children = t.children_lists()
    clock = 0

    def tour(v: int):
        nonlocal clock
        out[v] = clock
        for u in children[v]:
            clock += 1
            tour(u)
            clock += 1

    tour(0)
    return out


def _correspondence_distortion(dx, dy, f, g) -> float:
    """Distortion of the correspondence graph(f) union graph(g)."""
    nx, ny = dx.shape[0], dy.shape[0]
    worst = 0.0
    for i in range(nx):
        for j in range(i, nx):
            worst = max(worst, abs(dx[i, j] - dy[f[i], f[j]]))
    for i in range(ny):
        for j in range(i, ny):
            worst = max(worst, abs(dy[i, j] - dx[g[i], g[j]]))
    for i in range(nx):
        for j in range(ny):
            worst = max(worst, abs(dx[i, g[j]] - dy[f[i], j]))
    return worst


def _min_distortion(dx: np.ndarray, dy: np.ndarray) -> tuple[float, list[int], list[int]]:
    """Branch-and-bound over map pairs (f: X->Y, g: Y->X).

    Every correspondence contains one of this form and distortion is
    monotone under inclusion, so the minimum over map pairs equals the
    minimum over all correspondences.
    """
    nx, ny = dx.shape[0], dy.shape[0]
    best = [np.inf]
    best_fg: list = [None, None]
    f = [-1] * nx
    g = [-1] * ny

    def bound_f(i: int) -> float:
        worst = 0.0
        for a in range(i + 1):
            for b in range(a, i + 1):
                worst = max(worst, abs(dx[a, b] - dy[f[a], f[b]]))
        return worst

    def assign_g(j: int, cur: float):
        if cur >= best[0]:
            return
        if j == ny:
            best[0] = cur
            best_fg[0], best_fg[1] = list(f), list(g)
            return
        for cand in range(nx):
            g[j] = cand
            worst = cur
            for b in range(j + 1):
                worst = max(worst, abs(dy[j, b] - dx[cand, g[b]]))
            for a in range(nx):
                worst = max(worst, abs(dx[a, cand] - dy[f[a], j]))
            if worst < best[0]:
                assign_g(j + 1, worst)
        g[j] = -1

    def assign_f(i: int):
        if i == nx:
            assign_g(0, bound_f(nx - 1))
            return
        for cand in range(ny):
            f[i] = cand
            if bound_f(i) < best[0]:
                assign_f(i + 1)
        f[i] = -1

    assign_f(0)
    return best[0], best_fg[0], best_fg[1]


def gh_distance_bruteforce(x: FiniteMetricSpace, y: FiniteMetricSpace, cap: int = 7) -> float:
    """Gromov-Hausdorff distance: half the minimal correspondence distortion."""
    if x.size > cap or y.size > cap:
        raise TooLarge(f"brute force capped at {cap} points")
    dis, _, _ = _min_distortion(x.dist, y.dist)
    return dis / 2.0


def _min_coupling_outside(r_mask: np.ndarray, mu: np.ndarray, nu: np.ndarray) -> float:
    """min over couplings of the mass placed outside the correspondence."""
    nx, ny = r_mask.shape
    cost = (~r_mask).astype(float).ravel()
    a_eq = []
    b_eq = []
    for i in range(nx):
        row = np.zeros(nx * ny)
        row[i * ny : (i + 1) * ny] = 1.0
        a_eq.append(row)
        b_eq.append(mu[i])
    for j in range(ny):
        row = np.zeros(nx * ny)
        row[j::ny] = 1.0
        a_eq.append(row)
        b_eq.append(nu[j])
    res = linprog(cost, A_eq=np.array(a_eq), b_eq=np.array(b_eq), bounds=(0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"coupling LP failed: {res.message}")
    return float(res.fun)


def ghp_distance_bruteforce(x: FiniteMetricSpace, y: FiniteMetricSpace, cap: int = 7) -> float:
    """Certified upper bound on the Gromov-Hausdorff-Prokhorov distance.

    For a correspondence R with distortion D and a coupling pi of the two
    mass vectors, gluing along R gives Hausdorff term D/2 and Prokhorov
    term at most max(D/2, pi(outside R)), so the bound is
    ``D/2 + max(D/2, min-coupling mass outside R)``.  The minimum is taken
    over all map-pair correspondences, with the coupling solved exactly as
    a transport LP (which dominates any fixed-grid coupling search).
    """
    if x.size > cap or y.size > cap:
        raise TooLarge(f"brute force capped at {cap} points")
    if x.masses is None or y.masses is None:
        raise ValueError("GHP needs mass vectors on both spaces")
    dx, dy = x.dist, y.dist
    nx, ny = x.size, y.size
    best = [np.inf]
    f = [-1] * nx
    g = [-1] * ny

    def leaf():
        dis = _correspondence_distortion(dx, dy, f, g)
        if dis / 2.0 >= best[0]:
            return
        mask = np.zeros((nx, ny), dtype=bool)
        mask[range(nx), f] = True
        mask[g, range(ny)] = True
        outside = _min_coupling_outside(mask, x.masses, y.masses)
        best[0] = min(best[0], dis / 2.0 + max(dis / 2.0, outside))

    def assign_g(j: int, cur: float):
        if cur / 2.0 >= best[0]:
            return
        if j == ny:
            leaf()
            return
        for cand in range(nx):
            g[j] = cand
            worst = cur
            for b in range(j + 1):
                worst = max(worst, abs(dy[j, b] - dx[cand, g[b]]))
            for a in range(nx):
                worst = max(worst, abs(dx[a, cand] - dy[f[a], j]))
            assign_g(j + 1, worst)
        g[j] = -1

    def assign_f(i: int, cur: float):
        if cur / 2.0 >= best[0]:
            return
        if i == nx:
            assign_g(0, cur)
            return
        for cand in range(ny):
            f[i] = cand
            worst = cur
            for a in range(i + 1):
                worst = max(worst, abs(dx[a, i] - dy[f[a], cand]))
            assign_f(i + 1, worst)
        f[i] = -1

    assign_f(0, 0.0)
    return float(best[0])


def gh_upper_bound_from_codings(f: CodingFunction, g: CodingFunction) -> float:
    """2 * sup |f - g| after rescaling both supports to [0, 1].

    Standard comparison bound between trees coded by two functions; always
    at least the brute-force GH distance of common snapshots.
    """
    sf = f.support or 1.0
    sg = g.support or 1.0
    grid = np.union1d(f.times / sf, g.times / sg)
    fv = np.interp(grid, f.times / sf, f.values)
    gv = np.interp(grid, g.times / sg, g.values)
    return 2.0 * float(np.abs(fv - gv).max())

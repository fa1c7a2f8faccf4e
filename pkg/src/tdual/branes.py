"""Lagrangian sections of the dual fibration and their generating potentials.

For each integer level k the dual fibration carries a section

    gamma^(k)(r) = k * gamma^(1)(r),    gamma^(1)_j(r) = r_j^2 / (1 + sum r_i^2),

whose graph over the radii space is the brane of level k; the same data shows
up as the angular part of a unitary connection with weight function
h_k(r) = (1 + sum r_i^2)^{-k}.

For negative k the section is, on suitable cells of the covering torus
(R/(n+1)Z)^n, the graph of the differential of a potential.  The building
block is the level -1 potential on the open simplex {g_i < 0, sum g_i > -1}:

    f(g) = 1/2 sum_i g_i log(-g_i) - 1/2 (1 + sum_j g_j) log(1 + sum_j g_j),

whose gradient is y_i = 1/2 log(-g_i / (1 + sum g)) = log r_i.  On the cell
with corner offset a and level k < 0 we use the rescaled lift

    f_{k,a}(g) = (-k) * f((g - a) / (-k)),

which again satisfies grad f_{k,a} = log r along the level-k section.  The
unscaled composition f((g - a)/(-k)) — available via ``literal_scaling`` —
produces log(r)/(-k) instead and therefore fails the graph property by the
factor -k whenever k <= -2; `check_graph` exposes both behaviours.

All checks report through :class:`tdual.report.CheckReport`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import MirrorPoint, TangentVector, symplectic_form_eval
from .report import CheckReport


def hermitian_weight(k: int, r: tuple[float, ...] | np.ndarray) -> float:
    """Weight function h_k(r) = (1 + sum r_i^2)^(-k) of the level-k connection.

    >>> hermitian_weight(1, (1.0,))
    0.5
    >>> hermitian_weight(2, (1.0,))
    0.25
    """
    rr = np.asarray(r, dtype=float)
    return float((1.0 + (rr * rr).sum()) ** (-k))


def section_gamma_unreduced(k: int, r: tuple[float, ...] | np.ndarray) -> tuple[float, ...]:
    """Angular coefficients k * r_j^2 / (1 + sum r_i^2), before mod-1 reduction.

    This is both the lift of the level-k section and the angular part of the
    level-k connection; it is exactly k times the level-1 value.
    """
    rr = np.asarray(r, dtype=float)
    s = (rr * rr).sum()
    return tuple(float(v) for v in k * rr * rr / (1.0 + s))


# The connection's angular part coincides with the unreduced section.
connection_angular_part = section_gamma_unreduced


def section_gamma(k: int, r: tuple[float, ...] | np.ndarray) -> tuple[float, ...]:
    """Level-k section value gamma^(k)(r), reduced to the torus [0, 1)^n.

    >>> section_gamma(1, (1.0, 1.0))
    (0.3333333333333333, 0.3333333333333333)
    """
    return tuple(v % 1.0 for v in section_gamma_unreduced(k, r))


def base_potential(u: np.ndarray) -> float:
    """Level -1 potential on the open simplex {u_i < 0, sum u_i > -1}."""
    s = float(u.sum())
    return float(0.5 * (u * np.log(-u)).sum() - 0.5 * (1.0 + s) * math.log1p(s))


@dataclass(frozen=True)
class LiftedCell:
    """An open cell of the covering torus carrying a lifted potential.

    The cell at level k in {-n-1, ..., -1} with corner offset a (each
    a_i in {-n, ..., 0}) is the open region

        { g : g_i < a_i for all i,  sum_i (g_i - a_i) > k }

    of (R/(n+1)Z)^n, described here through its standard lift to R^n.  Its
    points are in bijection with the radii space via u = (g - a)/(-k) and
    r_i = sqrt(-u_i / (1 + sum u)).
    """

    n: int
    k: int
    a: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not (-self.n - 1 <= self.k <= -1):
            raise ValueError(f"level k={self.k} outside {{-n-1, ..., -1}} for n={self.n}")
        a = tuple(int(v) for v in self.a)
        if len(a) != self.n:
            raise ValueError(f"offset must have length n={self.n}: {a}")
        if any(not (-self.n <= v <= 0) for v in a):
            raise ValueError(f"offset entries must lie in {{-n, ..., 0}}: {a}")
        object.__setattr__(self, "a", a)

    def to_unit(self, gamma: np.ndarray) -> np.ndarray:
        """Map a cell point to the level -1 domain: u = (gamma - a) / (-k)."""
        return (gamma - np.asarray(self.a, dtype=float)) / (-self.k)

    def constraint_slacks(self, gamma: tuple[float, ...] | np.ndarray) -> tuple[float, ...]:
        """Positive parts required for membership: (a_i - g_i ..., sum slack).

        Returns n+1 numbers, one per defining inequality; the point lies in
        the open cell iff all are positive.
        """
        g = np.asarray(gamma, dtype=float)
        a = np.asarray(self.a, dtype=float)
        side = tuple(float(v) for v in (a - g))
        total = float((g - a).sum() - self.k)
        return side + (total,)

    def contains(self, gamma: tuple[float, ...] | np.ndarray, margin: float = 0.0) -> bool:
        return all(s > margin for s in self.constraint_slacks(gamma))

    def barycenter(self) -> tuple[float, ...]:
        """The center point a + k/(n+1) * (1, ..., 1), where grad f = 0."""
        return tuple(ai + self.k / (self.n + 1) for ai in self.a)

    def interior_grid(self, density: int, margin: float = 0.05) -> np.ndarray:
        """Deterministic sample grid, `margin` being per-constraint slack in u.

        Takes the product grid of `density` points per axis on the margin-
        shrunk simplex in u-coordinates and keeps points respecting the sum
        constraint; maps back to cell coordinates g = a + (-k) u.
        """
        if not 0 < margin < 1.0 / (self.n + 1):
            raise ValueError("margin must lie in (0, 1/(n+1))")
        axis = np.linspace(-1.0 + margin, -margin, density)
        pts = np.array(list(itertools.product(axis, repeat=self.n)))
        pts = pts[pts.sum(axis=1) > -1.0 + margin]
        return np.asarray(self.a, dtype=float) + (-self.k) * pts

    def brane_log_radii(self, gamma: tuple[float, ...] | np.ndarray) -> np.ndarray:
        """Parametric route to y = log r at the section point over `gamma`.

        Solves the section equation for the radii: with u = (g - a)/(-k),
        r_i^2 = -u_i / (1 + sum u), so y_i = 1/2 log(-u_i / (1 + sum u)).
        """
        g = np.asarray(gamma, dtype=float)
        if not self.contains(g):
            raise ValueError(f"point {tuple(g)} lies outside the open cell {self}")
        u = self.to_unit(g)
        return 0.5 * np.log(-u / (1.0 + u.sum()))


def potential_value(
    cell: LiftedCell,
    gamma: tuple[float, ...] | np.ndarray,
    literal_scaling: bool = False,
) -> float:
    """Evaluate the cell's potential at an interior point.

    The default is the rescaled lift (-k) * f((g - a)/(-k)) whose gradient is
    log r along the brane; ``literal_scaling=True`` evaluates the bare
    composition f((g - a)/(-k)) instead (gradient log(r)/(-k)).

    Raises ValueError outside the open cell.
    """
    g = np.asarray(gamma, dtype=float)
    if not cell.contains(g):
        raise ValueError(f"point {tuple(g)} lies outside the open cell {cell}")
    value = base_potential(cell.to_unit(g))
    return value if literal_scaling else (-cell.k) * value


def check_graph(
    n: int,
    k: int,
    a: tuple[int, ...] | None = None,
    density: int = 12,
    fd_step: float = 1e-5,
    tol: float = 1e-7,
    margin: float = 0.05,
    literal_scaling: bool = False,
) -> CheckReport:
    """Check that the potential's gradient reproduces the brane's log radii.

    Central finite differences of the potential (step `fd_step`) are compared
    against the parametric values y = log r at a deterministic interior grid;
    `margin` is the per-constraint slack in u-coordinates, and must keep the
    samples at least 2 * fd_step away from the cell boundary.
    """
    cell = LiftedCell(n, k, a if a is not None else (0,) * n)
    if (-k) * margin < 2 * fd_step:
        raise ValueError("sample margin too small for the requested fd step")
    samples = cell.interior_grid(density, margin)
    worst = None
    max_dev = 0.0
    for g in samples:
        expected = cell.brane_log_radii(g)
        fd = np.empty(n)
        for i in range(n):
            step = np.zeros(n)
            step[i] = fd_step
            fd[i] = (
                potential_value(cell, g + step, literal_scaling)
                - potential_value(cell, g - step, literal_scaling)
            ) / (2 * fd_step)
        dev = float(np.max(np.abs(fd - expected)))
        if dev >= max_dev:
            max_dev = dev
            worst = {"gamma": list(g), "fd_gradient": list(fd), "log_radii": list(expected)}
    return CheckReport(
        check="branes.graph",
        parameters={
            "n": n,
            "k": k,
            "a": list(cell.a),
            "density": density,
            "fd_step": fd_step,
            "tol": tol,
            "margin": margin,
            "literal_scaling": literal_scaling,
            "samples": len(samples),
        },
        max_deviation=max_dev,
        witness=worst,
        passed=max_dev <= tol,
    )


def section_tangent_frame(n: int, k: int, r: np.ndarray) -> list[TangentVector]:
    """Tangent vectors of the level-k section along the radii directions.

    The i-th frame vector is the image of d/dr_i under the parametrization
    r -> (y = log r, gamma = k gamma^(1)(r)): its y-part is e_i / r_i and its
    angular part is k * d(gamma^(1))/dr_i.
    """
    s = float((r * r).sum())
    frame = []
    for i in range(n):
        y_part = np.zeros(n)
        y_part[i] = 1.0 / r[i]
        g_part = -2.0 * r[i] * r * r / (1.0 + s) ** 2
        g_part[i] += 2.0 * r[i] / (1.0 + s)
        frame.append(TangentVector(tuple(y_part), tuple(k * g_part)))
    return frame


def check_exactness(
    n: int,
    k: int,
    density: int = 20,
    tol: float = 1e-9,
    r_min: float = 0.2,
    r_max: float = 3.0,
) -> CheckReport:
    """Check that the reference two-form vanishes on the level-k section.

    Evaluates the form on all pairs of section tangent vectors over a
    `density`-per-axis grid of radii.  For n = 1 there are no pairs and the
    check passes vacuously with deviation 0.
    """
    axis = np.linspace(r_min, r_max, density)
    max_dev = 0.0
    worst = None
    for r in itertools.product(axis, repeat=n):
        rr = np.asarray(r)
        base = MirrorPoint(tuple(rr), (0.0,) * n)
        frame = section_tangent_frame(n, k, rr)
        for i in range(n):
            for j in range(i + 1, n):
                val = abs(symplectic_form_eval(base, frame[i], frame[j]))
                if val >= max_dev:
                    max_dev = val
                    worst = {"r": list(r), "pair": [i, j]}
    return CheckReport(
        check="branes.exactness",
        parameters={
            "n": n,
            "k": k,
            "density": density,
            "tol": tol,
            "r_range": [r_min, r_max],
        },
        max_deviation=max_dev,
        witness=worst,
        passed=max_dev <= tol,
    )


def geodesic_flow(
    y: tuple[float, ...], gamma: tuple[float, ...], t: float
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Flow (y, gamma) for time t along the unit covector of y in the flat metric.

    The angles move by t * y / |y| while y stays fixed; the zero covector has
    no direction and is rejected.

    >>> geodesic_flow((5.0,), (0.0,), 0.3)
    ((5.0,), (0.3,))
    """
    yv = np.asarray(y, dtype=float)
    gv = np.asarray(gamma, dtype=float)
    if yv.shape != gv.shape:
        raise ValueError("y and gamma must have the same length")
    norm = float(np.linalg.norm(yv))
    if norm == 0.0:
        raise ValueError("geodesic direction undefined for the zero covector")
    return tuple(float(v) for v in yv), tuple(float(v) for v in gv + t * yv / norm)


def wrap_to_half(v: np.ndarray) -> np.ndarray:
    """Reduce each component to the representative in [-1/2, 1/2)."""
    return (v + 0.5) % 1.0 - 0.5


def separation_probe(
    n: int,
    s: tuple[float, ...],
    delta_probe: float = 0.05,
    num_samples: int = 10_000,
    seed: int | None = 0,
    t_pairs: list[tuple[float, float]] | None = None,
) -> CheckReport:
    """Probe that short flows keep the level -1 brane off the fiber over s.

    An intersection of the flowed fiber torus over s (time t1) with the flowed
    level -1 brane (time t2) would force, over some brane point gamma, the
    angular equation s = gamma + (t2 - t1) y/|y| on the torus, with
    y = grad f(gamma).  The probe samples gamma uniformly on the brane's
    domain simplex and times 0 <= t1 <= t2 < delta_probe, and reports the
    minimum torus distance between s and the flowed gamma ("defect"); a
    strictly positive minimum means no intersection among the samples.

    `s` should lie on the domain's boundary (the fibers over interior points
    are met at time 0).  Sampling is seeded for reproducibility.
    """
    if not 0 < delta_probe < 0.5:
        raise ValueError("delta_probe must lie in (0, 1/2)")
    sv = np.asarray(s, dtype=float)
    if sv.shape != (n,):
        raise ValueError(f"probe point must have length n={n}")
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(n + 1), size=num_samples)
    gammas = -w[:, :n]  # uniform on {g_i < 0, sum g > -1}
    y = 0.5 * np.log(-gammas / (1.0 + gammas.sum(axis=1, keepdims=True)))
    norms = np.linalg.norm(y, axis=1)
    ok = norms > 0
    gammas, y, norms = gammas[ok], y[ok], norms[ok]
    if t_pairs is not None:
        tp = np.asarray(t_pairs, dtype=float)
        if np.any(tp < 0) or np.any(tp[:, 0] > tp[:, 1]) or np.any(tp[:, 1] >= delta_probe):
            raise ValueError("t pairs must satisfy 0 <= t1 <= t2 < delta_probe")
        dts = np.repeat(tp[:, 1] - tp[:, 0], math.ceil(len(gammas) / len(tp)))[: len(gammas)]
        t1s = np.repeat(tp[:, 0], math.ceil(len(gammas) / len(tp)))[: len(gammas)]
    else:
        times = np.sort(rng.uniform(0.0, delta_probe, size=(len(gammas), 2)), axis=1)
        t1s, dts = times[:, 0], times[:, 1] - times[:, 0]
    flowed = gammas + dts[:, None] * y / norms[:, None]
    defects = np.linalg.norm(wrap_to_half(sv[None, :] - flowed), axis=1)
    idx = int(np.argmin(defects))
    min_defect = float(defects[idx])
    return CheckReport(
        check="branes.separation",
        parameters={
            "n": n,
            "s": list(sv),
            "delta_probe": delta_probe,
            "num_samples": num_samples,
            "seed": seed,
        },
        max_deviation=None,
        witness={
            "min_defect": min_defect,
            "gamma": list(gammas[idx]),
            "t1": float(t1s[idx]),
            "t2": float(t1s[idx] + dts[idx]),
        },
        passed=min_defect > 0.0,
    )


def domain_face_midpoints(n: int) -> list[tuple[float, ...]]:
    """Midpoints of the n+1 boundary faces of the level -1 domain simplex.

    For n = 1 the domain is an arc whose boundary is the single torus point 0,
    returned once.
    """
    if n == 1:
        return [(0.0,)]
    mids = []
    interior = -1.0 / n  # barycentric value on a face: the remaining mass
    for i in range(n):
        mid = [interior] * n
        mid[i] = 0.0
        mids.append(tuple(mid))
    mids.append(tuple([-1.0 / n] * n))  # face sum g = -1
    return mids

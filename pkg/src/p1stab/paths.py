"""Sampled curves: lengths, geodesic tests and the explicit path constructions.

Curves are finite polylines.  The length of a polyline is the sum of the
distances between consecutive samples, which is a lower bound for the length
of any continuous curve through those samples and grows under refinement.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .coords import (
    Algebraic,
    Boundary,
    ChamberMismatch,
    ChartPoint,
    DomainError,
    Geometric,
    StabPoint,
    chart_to_stab,
    closure_coords,
    project_closure,
    stab_to_chart,
    to_json,
)
from .halfplane import (
    MoebiusMap,
    as_hpoint,
    axis_dZ_profile,
    d_hyp,
    d_Z,
    geodesic_endpoints,
    normalize_to_axis,
)
from .metric import distance, quotient_distance

METRICS: dict[str, Callable] = {
    "d": lambda a, b: distance(a, b).d,
    "dbar": lambda a, b: quotient_distance(a, b).d,
    "dmass": lambda a, b: distance(a, b).d_mass,
    "dbar_mass": lambda a, b: quotient_distance(a, b).d_mass,
    "dZ": d_Z,
    "dhyp": d_hyp,
}
HALFPLANE_METRICS = frozenset({"dZ", "dhyp"})

# the isometry z -> 10 - 1/z used for the bent geodesic
RHO0 = MoebiusMap(10.0, -1.0, 1.0, 0.0)


class NotGeodesic(DomainError):
    """Sampled curve fails distance additivity."""


def _is_stab(p) -> bool:
    return isinstance(p, (Geometric, Boundary, Algebraic))


def metric_fn(metric: str) -> Callable:
    try:
        return METRICS[metric]
    except KeyError:
        raise DomainError(f"unknown metric {metric!r}; choose from {sorted(METRICS)}") from None


@dataclass(frozen=True)
class Polyline:
    points: tuple
    metric: str

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        metric_fn(self.metric)
        if len(pts) < 2:
            raise DomainError("a polyline needs at least two points")
        if self.metric in HALFPLANE_METRICS:
            pts = tuple(as_hpoint(p) for p in pts)
            object.__setattr__(self, "points", pts)
        elif not all(_is_stab(p) for p in pts):
            raise DomainError(f"metric {self.metric!r} needs stability points only")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise DomainError("consecutive polyline points must be distinct")

    def __len__(self) -> int:
        return len(self.points)

    def dist(self, a, b) -> float:
        return metric_fn(self.metric)(a, b)

    def segment_lengths(self) -> np.ndarray:
        return np.array([self.dist(a, b) for a, b in zip(self.points, self.points[1:])])

    def cumulative_lengths(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.segment_lengths())])

    def to_json(self) -> list:
        if self.metric in HALFPLANE_METRICS:
            return [[p.real, p.imag] for p in self.points]
        return [to_json(p) for p in self.points]

    def to_csv(self, params: Sequence[float] | None = None) -> str:
        """One row per sample: parameter, coordinates, cumulative length."""
        cum = self.cumulative_lengths()
        if params is None:
            params = cum / cum[-1] if cum[-1] > 0 else np.linspace(0.0, 1.0, len(cum))
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "s", "form", "re", "im", "beta", "x", "y", "cum_length"])
        for i, (p, s, c) in enumerate(zip(self.points, params, cum)):
            if self.metric in HALFPLANE_METRICS:
                w.writerow([i, repr(float(s)), "hpoint", repr(p.real), repr(p.imag), "", "", "", repr(float(c))])
                continue
            tau, x, y = closure_coords(p)
            beta = p.beta if isinstance(p, Algebraic) else ""
            w.writerow([i, repr(float(s)), p.form, repr(tau.real), repr(tau.imag), beta, repr(x), repr(y), repr(float(c))])
        return buf.getvalue()


def path_length(gamma: Polyline) -> float:
    return float(gamma.segment_lengths().sum())


def distance_matrix(points: Sequence, metric: str) -> np.ndarray:
    fn = metric_fn(metric)
    n = len(points)
    dm = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            dm[i, j] = dm[j, i] = fn(points[i], points[j])
    return dm


@dataclass(frozen=True)
class GeodesicReport:
    additivity_defect: float
    tolerance: float

    @property
    def is_geodesic_within(self) -> bool:
        return self.additivity_defect <= self.tolerance


def additivity_defect(dm: np.ndarray) -> float:
    """Max over ``i < j < k`` of ``|d(i,k) - d(i,j) - d(j,k)|``."""
    n = dm.shape[0]
    worst = 0.0
    for j in range(1, n - 1):
        gap = dm[:j, j][:, None] + dm[j, j + 1 :][None, :] - dm[:j, j + 1 :]
        worst = max(worst, float(np.abs(gap).max()))
    return worst


def additivity_check(points: Sequence, metric: str, tol: float = 1e-9) -> GeodesicReport:
    if len(points) < 3:
        raise DomainError("additivity needs at least three points")
    return GeodesicReport(additivity_defect(distance_matrix(points, metric)), tol)


@dataclass(frozen=True)
class Reparametrization:
    polyline: Polyline
    params: np.ndarray
    length: float


def reparametrize_arclength(samples: Sequence, metric: str, tol: float = 1e-9) -> Reparametrization:
    """Normalised distance-from-start parameters of an additive sample."""
    dm = distance_matrix(samples, metric)
    if len(samples) >= 3:
        defect = additivity_defect(dm)
        if defect > tol:
            raise NotGeodesic(f"additivity defect {defect:.3e} exceeds {tol:.1e}")
    total = dm[0, -1]
    if not total > 0:
        raise DomainError("endpoints coincide")
    params = dm[0] / total
    if np.any(np.diff(params) <= 0):
        raise NotGeodesic("distance from the start is not strictly increasing")
    params[-1] = 1.0
    return Reparametrization(Polyline(tuple(samples), metric), params, float(total))


# -- d_Z geodesics -----------------------------------------------------------


def _axis_solver(p1: complex, p2: complex):
    rho = normalize_to_axis(p1, p2)
    h1 = rho(p1).imag
    prof = axis_dZ_profile(rho)
    top = prof(h1)
    total = top - prof(1.0)
    inv = rho.inverse()

    def point_at(s: float) -> complex:
        target = s * total
        # bisection in log-height (hyperbolic arclength) between p2 (0) and p1 (log h1)
        lo, hi = 0.0, math.log(h1)
        for _ in range(80):
            if hi - lo <= 1e-12:
                break
            mid = 0.5 * (lo + hi)
            if top - prof(math.exp(mid)) > target:
                lo = mid
            else:
                hi = mid
        return inv(1j * math.exp(0.5 * (lo + hi)))

    return point_at


def dZ_geodesic_point(p1, p2, s: float) -> complex:
    """Point on the hyperbolic geodesic from ``p1`` to ``p2`` at ``d_Z``-fraction ``s``."""
    p1, p2 = as_hpoint(p1), as_hpoint(p2)
    if p1 == p2:
        raise DomainError("endpoints coincide")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"fraction must lie in [0, 1], got {s}")
    if s == 0:
        return p1
    if s == 1:
        return p2
    return _axis_solver(p1, p2)(s)


def dZ_geodesic(p1, p2, n_samples: int = 256) -> Polyline:
    """``n_samples`` points evenly spaced in ``d_Z`` along the hyperbolic geodesic."""
    p1, p2 = as_hpoint(p1), as_hpoint(p2)
    if p1 == p2:
        raise DomainError("endpoints coincide")
    solve = _axis_solver(p1, p2)
    ss = np.linspace(0.0, 1.0, n_samples)
    pts = [p1] + [solve(float(s)) for s in ss[1:-1]] + [p2]
    return Polyline(tuple(pts), "dZ")


def bent_geodesic(eps: float = 0.01, n_samples: int = 129) -> Polyline:
    """Pull back the broken segment ``9i -> eps + 10i -> 11i`` through ``z -> 10 - 1/z``."""
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    half = max(n_samples // 2, 2)
    vertex = complex(eps, 10.0)
    first = [9j + t * (vertex - 9j) for t in np.linspace(0.0, 1.0, half + 1)]
    second = [vertex + t * (11j - vertex) for t in np.linspace(0.0, 1.0, half + 1)[1:]]
    inv = RHO0.inverse()
    return Polyline(tuple(inv(w) for w in first + second), "dZ")


def hyperbolic_distance_to_geodesic(z: complex, p1: complex, p2: complex) -> float:
    """Hyperbolic distance from ``z`` to the complete geodesic through ``p1, p2``."""
    rho = normalize_to_axis(p1, p2)
    w = rho(as_hpoint(z))
    return math.asinh(abs(w.real) / w.imag)


# -- chart interpolation and wall crossings ----------------------------------


def common_chart(a: StabPoint, b: StabPoint) -> int | None:
    """Chart used to interpolate between ``a`` and ``b``; ``None`` for two geometric points."""
    ka = None if isinstance(a, Geometric) else a.k
    kb = None if isinstance(b, Geometric) else b.k
    if ka is None:
        return kb
    if kb is not None and kb != ka:
        raise ChamberMismatch(f"no common chart for X_{ka} and X_{kb}; route through a geometric point")
    return ka


def interpolate(a: StabPoint, b: StabPoint, t: float) -> StabPoint:
    """Straight-line interpolation in a shared chart (in ``(tau, x, y)`` for geometric pairs)."""
    k = common_chart(a, b)
    if k is None:
        return Geometric(a.tau + t * (b.tau - a.tau), a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    ca, cb = stab_to_chart(a, k), stab_to_chart(b, k)
    lerp = [u + t * (v - u) for u, v in zip((ca.alpha, ca.beta, ca.x, ca.y), (cb.alpha, cb.beta, cb.x, cb.y))]
    return chart_to_stab(ChartPoint(k, *lerp))


class Crossing(NamedTuple):
    segment: int
    t: float
    point: StabPoint


def boundary_crossings(gamma: Polyline) -> list[Crossing]:
    """Wall points met by the chart-linear polyline: wall vertices and interior ``beta = 1`` crossings."""
    pts = gamma.points
    out: list[Crossing] = []
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        if isinstance(a, Boundary) and (not out or out[-1].point != a):
            out.append(Crossing(i, 0.0, a))
        k = common_chart(a, b)
        if k is None:
            continue
        ca, cb = stab_to_chart(a, k), stab_to_chart(b, k)
        if (ca.beta - 1.0) * (cb.beta - 1.0) < 0:
            t = (1.0 - ca.beta) / (cb.beta - ca.beta)
            vals = [u + t * (v - u) for u, v in zip((ca.alpha, ca.x, ca.y), (cb.alpha, cb.x, cb.y))]
            out.append(Crossing(i, t, chart_to_stab(ChartPoint(k, vals[0], 1.0, vals[1], vals[2]))))
    if isinstance(pts[-1], Boundary) and (not out or out[-1].point != pts[-1]):
        out.append(Crossing(len(pts) - 1, 0.0, pts[-1]))
    return out


def refine(gamma: Polyline, min_segments: int) -> Polyline:
    """Subdivide every segment evenly (chart-linear) until there are at least ``min_segments``."""
    n_seg = len(gamma) - 1
    per = max(1, math.ceil(min_segments / n_seg))
    pts = [gamma.points[0]]
    for a, b in zip(gamma.points, gamma.points[1:]):
        for j in range(1, per):
            if gamma.metric in HALFPLANE_METRICS:
                pts.append(a + (j / per) * (b - a))
            else:
                pts.append(interpolate(a, b, j / per))
        pts.append(b)
    return Polyline(tuple(pts), gamma.metric)


def with_crossings(gamma: Polyline) -> Polyline:
    """Insert the interior wall crossings as vertices."""
    extra = {c.segment: c.point for c in boundary_crossings(gamma) if c.t > 0}
    pts = []
    for i, p in enumerate(gamma.points):
        pts.append(p)
        if i in extra:
            pts.append(extra[i])
    return Polyline(tuple(pts), gamma.metric)


# -- composite paths for the length-metric bound ------------------------------


def closure_geodesic(c1: complex, c2: complex, n_samples: int) -> list[complex]:
    """Samples of the hyperbolic geodesic between two closure points (endpoints may be real)."""
    if c1 == c2:
        return [c1]
    if abs(c1.real - c2.real) <= 1e-15 * max(1.0, abs(c1), abs(c2)):
        ts = np.linspace(0.0, 1.0, n_samples)
        return [complex(c1.real, c1.imag + t * (c2.imag - c1.imag)) for t in ts]
    (p1, q1), (p2, q2) = geodesic_endpoints(c1, c2)
    t1, t2 = p1 / q1, p2 / q2
    centre, radius = 0.5 * (t1 + t2), 0.5 * abs(t1 - t2)
    th1, th2 = cmath.phase(c1 - centre), cmath.phase(c2 - centre)
    # a real endpoint sits at angle 0 or pi; clamp the sign of -0.0
    th1, th2 = abs(th1), abs(th2)
    pts = [centre + radius * cmath.exp(1j * th) for th in np.linspace(th1, th2, n_samples)]
    pts[0], pts[-1] = c1, c2
    return [complex(p.real, max(p.imag, 0.0)) for p in pts]


def _closure_points(c1: complex, c2: complex, n_samples: int) -> list[StabPoint]:
    out: list[StabPoint] = []
    for z in closure_geodesic(c1, c2, n_samples):
        out.append(Geometric(z) if z.imag > 0 else Boundary(z.real))
    return out


def _beta_segment(p: StabPoint, beta_from: float, beta_to: float, n: int) -> list[StabPoint]:
    c = stab_to_chart(p)
    return [chart_to_stab(ChartPoint(c.k, c.alpha, float(b))) for b in np.linspace(beta_from, beta_to, n)]


def _dedupe(points: list[StabPoint]) -> tuple:
    out: list[StabPoint] = []
    for p in points:
        if out and quotient_distance(out[-1], p).d == 0.0:
            continue
        out.append(p)
    return tuple(out)


def composite_path(q1: StabPoint, q2: StabPoint, n_samples: int = 64) -> Polyline:
    """Path used to bound the length metric by twice the quotient metric.

    The closure part follows the hyperbolic geodesic between the projected
    points; straight ``beta`` segments at fixed ``alpha`` join it to algebraic
    endpoints.  Two points of one algebraic chamber are joined by a straight
    chart segment.
    """
    if isinstance(q1, Geometric) and isinstance(q2, Geometric):
        raise DomainError("both points are geometric; use dZ_geodesic for the closure path")
    if isinstance(q1, Geometric):
        return Polyline(tuple(reversed(composite_path(q2, q1, n_samples).points)), "dbar")
    c1 = stab_to_chart(q1)
    if not isinstance(q2, Geometric) and q2.k == q1.k:
        c2 = stab_to_chart(q2)
        pts = [
            chart_to_stab(ChartPoint(c1.k, c1.alpha + t * (c2.alpha - c1.alpha), c1.beta + t * (c2.beta - c1.beta)))
            for t in np.linspace(0.0, 1.0, n_samples)
        ]
        return Polyline(_dedupe(pts), "dbar")
    start = _beta_segment(q1, c1.beta, 1.0, n_samples) if c1.beta > 1 else []
    w1 = complex(project_closure(q1).tau)
    w2 = closure_coords(q2)[0]
    middle = _closure_points(w1, w2, n_samples)
    end: list[StabPoint] = []
    if isinstance(q2, Algebraic):
        end = _beta_segment(q2, 1.0, q2.beta, n_samples)
    return Polyline(_dedupe(start + middle + end), "dbar")


def polyline_from_json(obj: list, metric: str) -> Polyline:
    from .coords import from_json

    if metric in HALFPLANE_METRICS:
        return Polyline(tuple(complex(re, im) for re, im in obj), metric)
    return Polyline(tuple(from_json(o) for o in obj), metric)


def dump_polyline(gamma: Polyline) -> str:
    return json.dumps(gamma.to_json())

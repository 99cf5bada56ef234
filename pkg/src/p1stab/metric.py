"""The canonical metric on Stab(P^1), its C-quotient, and a brute-force oracle.

Both the mass and the phase component of the distance between two points have
the shape

    max(sup_a |a + delta|)   over a in A u {0},

with ``sup A >= 0 >= inf A`` and ``delta`` the relative ``x`` (resp. ``y``)
shift.  :class:`_Component` stores ``(hi, lo, delta)`` so that the distance,
its infimum over the C-action and the optimal shift all come from one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .coords import (
    Boundary,
    ChartPoint,
    DomainError,
    Geometric,
    StabPoint,
    chart_to_stab,
    closure_coords,
    stab_to_chart,
)
from .lattice import (
    LatticeExtrema,
    lattice_arg_extrema,
    lattice_log_extrema,
    supinf_center,
    tail_bound,
)
from .sheaves import line_bundle_table, skyscraper_mass_phase

__all__ = [
    "DistanceBreakdown",
    "LatticeExtrema",
    "boundary_infimum",
    "brute_force_distance",
    "distance",
    "lattice_arg_extrema",
    "lattice_log_extrema",
    "optimal_shift",
    "oracle_tail_bound",
    "quotient_distance",
    "supinf_center",
]


@dataclass(frozen=True)
class DistanceBreakdown:
    d: float
    d_mass: float
    d_phase: float
    witnesses: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {"d": self.d, "d_mass": self.d_mass, "d_phase": self.d_phase, "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class _Component:
    hi: float
    lo: float
    delta: float
    hi_witness: str
    lo_witness: str
    tail_witness: str

    @property
    def value(self) -> float:
        return max(self.hi + self.delta, -(self.lo + self.delta))

    @property
    def quotient(self) -> float:
        return supinf_center(self.hi, self.lo)[0]

    @property
    def best_delta(self) -> float:
        return supinf_center(self.hi, self.lo)[1]

    def witness(self) -> str:
        if self.hi + self.delta >= -(self.lo + self.delta):
            hit = self.hi_witness if self.hi > 0 else self.tail_witness
        else:
            hit = self.lo_witness if self.lo < 0 else self.tail_witness
        return hit

    def feasible_delta(self, target: float, bound: float) -> float:
        """Shift closest to ``target`` keeping ``value <= bound``."""
        return min(max(target, -bound - self.lo), bound - self.hi)


def _lb(n: Optional[int]) -> str:
    return "O_pt" if n is None else f"O({n})"


def _mass_component(s1: StabPoint, s2: StabPoint) -> _Component:
    t1, x1, _ = closure_coords(s1)
    t2, x2, _ = closure_coords(s2)
    ext = lattice_log_extrema(t1, t2)
    return _Component(ext.sup_value, ext.inf_value, x1 - x2, _lb(ext.sup_attained_at), _lb(ext.inf_attained_at), "O_pt")


def _phase_component(s1: StabPoint, s2: StabPoint) -> _Component:
    if isinstance(s1, Geometric) and isinstance(s2, Geometric):
        ext = lattice_arg_extrema(s1.tau, s2.tau)
        return _Component(
            ext.sup_value / math.pi,
            ext.inf_value / math.pi,
            s1.y - s2.y,
            _lb(ext.sup_attained_at),
            _lb(ext.inf_attained_at),
            "O_pt",
        )
    k1 = None if isinstance(s1, Geometric) else s1.k
    k2 = None if isinstance(s2, Geometric) else s2.k
    if k1 is None or k2 is None or k1 == k2:
        # common chart: values (beta1 - beta2) + dy at O(k+1), dy at O(k)
        k = k2 if k1 is None else k1
        c1, c2 = stab_to_chart(s1, k), stab_to_chart(s2, k)
        db = c1.beta - c2.beta
        wit = f"O({k + 1})"
        return _Component(max(db, 0.0), min(db, 0.0), c1.y - c2.y, wit, wit, f"O({k})")
    c1, c2 = stab_to_chart(s1), stab_to_chart(s2)
    if k1 < k2:
        # values beta1 + dy at O(k1+1), (1 - beta2) + dy at O(k2+1)
        return _Component(c1.beta, 1.0 - c2.beta, c1.y - c2.y, f"O({k1 + 1})", f"O({k2 + 1})", f"O({k1 + 1})")
    return _Component(c1.beta - 1.0, -c2.beta, c1.y - c2.y, f"O({k1 + 1})", f"O({k2 + 1})", f"O({k2 + 1})")


def _components(s1: StabPoint, s2: StabPoint) -> tuple[_Component, _Component]:
    return _mass_component(s1, s2), _phase_component(s1, s2)


def distance(s1: StabPoint, s2: StabPoint) -> DistanceBreakdown:
    """Closed-form ``d = max(d_mass, d_phase)`` between two points."""
    mass, phase = _components(s1, s2)
    dm, dp = mass.value, phase.value
    return DistanceBreakdown(max(dm, dp), dm, dp, (mass.witness(), phase.witness()))


def quotient_distance(q1: StabPoint, q2: StabPoint) -> DistanceBreakdown:
    """Distance between the C-orbits of ``q1`` and ``q2``; their ``x, y`` are ignored."""
    mass, phase = _components(q1, q2)
    dm, dp = mass.quotient, phase.quotient
    return DistanceBreakdown(max(dm, dp), dm, dp, (mass.hi_witness, mass.lo_witness))


def optimal_shift(s1: StabPoint, s2: StabPoint) -> tuple[float, float]:
    """``(x0, y0)`` with ``d(s1, c_act(s2, (x0, y0)))`` equal to the quotient distance."""
    mass, phase = _components(s1, s2)
    return mass.delta - mass.best_delta, phase.delta - phase.best_delta


def _brute_arrays(s: StabPoint, window: int):
    ns = np.arange(-window, window + 1)
    m, pp, pm = line_bundle_table(s, ns)
    sky = skyscraper_mass_phase(s)
    return ns, np.append(m, sky.m), np.append(pp, sky.phi_plus), np.append(pm, sky.phi_minus)


def brute_force_distance(s1: StabPoint, s2: StabPoint, window: int) -> DistanceBreakdown:
    """Direct sup over ``O(-window), ..., O(window)`` and ``O_pt``."""
    if window < 1:
        raise DomainError("window must be >= 1")
    ns, m1, p1, q1 = _brute_arrays(s1, window)
    _, m2, p2, q2 = _brute_arrays(s2, window)
    mass = np.abs(np.log(m1) - np.log(m2))
    phase = np.maximum(np.abs(p1 - p2), np.abs(q1 - q2))
    im, ip = int(np.argmax(mass)), int(np.argmax(phase))

    def label(i: int) -> str:
        return "O_pt" if i == len(ns) else f"O({int(ns[i])})"

    dm, dp = float(mass[im]), float(phase[ip])
    return DistanceBreakdown(max(dm, dp), dm, dp, (label(im), label(ip)))


def oracle_tail_bound(s1: StabPoint, s2: StabPoint, window: int) -> float:
    """Worst-case contribution of objects outside the brute-force window."""
    t1, _, _ = closure_coords(s1)
    t2, _, _ = closure_coords(s2)
    return tail_bound(t1, t2, window)


def _wall_gap(s: StabPoint, k: int, alpha: float, quotient: bool, mass_only: bool) -> float:
    b = chart_to_stab(ChartPoint(k, alpha, 1.0))
    if quotient:
        q = quotient_distance(s, b)
        return q.d_mass if mass_only else q.d
    mass, phase = _components(s, b)
    # inner optimum over the wall point's (x, y): the components decouple
    return mass.quotient if mass_only else max(mass.quotient, phase.quotient)


def _wall_minimizer(s: StabPoint, k: int, alpha: float, value: float, quotient: bool) -> StabPoint:
    b = chart_to_stab(ChartPoint(k, alpha, 1.0, 0.0, 0.0))
    if quotient:
        return Boundary(b.tau)
    mass, phase = _components(s, Boundary(b.tau))
    _, xs, ys = closure_coords(s)
    # keep the wall point's (x, y) as close to the input's as optimality allows;
    # mass.delta = xs - 0 and phase.delta = y_s(chart) - 0 for the wall point at (0, 0)
    dx = mass.feasible_delta(0.0, value)
    dy = phase.feasible_delta(phase.delta - ys, value)
    return Boundary(b.tau, xs - dx, phase.delta - dy)


@dataclass(frozen=True)
class WallSearch:
    k_range: tuple[int, int] = (-50, 50)
    alpha_grid: tuple[float, ...] = tuple(np.linspace(-12.0, 12.0, 241))
    refine_iters: int = 200


def boundary_infimum(
    s: StabPoint,
    search: WallSearch = WallSearch(),
    *,
    quotient: bool = False,
    mass_only: bool = False,
) -> tuple[float, StabPoint]:
    """Smallest distance found from ``s`` to the wall of the geometric chamber.

    Every value returned is the exact distance to an explicit wall point, so
    it bounds the true infimum from above.  Chambers are scanned on an
    ``alpha`` grid (wall point ``tau = k + 1/(1 + e^alpha)``) and the best
    cell is refined with a bounded scalar minimiser.
    """
    if isinstance(s, Boundary):
        raise DomainError("input already lies on the wall")
    lo_k, hi_k = search.k_range
    grid = np.asarray(search.alpha_grid, dtype=float)
    if lo_k > hi_k or grid.size == 0:
        raise DomainError("empty wall search range")
    best = (math.inf, 0, 0.0, 0)
    for k in range(lo_k, hi_k + 1):
        for i, a in enumerate(grid):
            v = _wall_gap(s, k, float(a), quotient, mass_only)
            if v < best[0]:
                best = (v, k, float(a), i)
    value, k, alpha, i = best
    if search.refine_iters > 0 and grid.size > 1:
        lo_a, hi_a = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
        res = minimize_scalar(
            lambda a: _wall_gap(s, k, float(a), quotient, mass_only),
            bounds=(lo_a, hi_a),
            method="bounded",
            options={"xatol": 1e-12, "maxiter": search.refine_iters},
        )
        if res.fun < value:
            value, alpha = float(res.fun), float(res.x)
    return value, _wall_minimizer(s, k, alpha, value, quotient)

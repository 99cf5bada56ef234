"""Reproducible numerical checks, each returning a :class:`Report`."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .coords import (
    Algebraic,
    Boundary,
    DomainError,
    Geometric,
    StabPoint,
    chart_to_stab,
    closure_coords,
    project_closure,
    stab_to_chart,
)
from .halfplane import d_hyp, d_Z, d_hyp_closed_form
from .lattice import lattice_arg_extrema, lattice_log_extrema, supinf_center
from .metric import (
    WallSearch,
    boundary_infimum,
    brute_force_distance,
    distance,
    oracle_tail_bound,
    quotient_distance,
)
from .paths import (
    Polyline,
    additivity_check,
    bent_geodesic,
    boundary_crossings,
    composite_path,
    dZ_geodesic,
    dZ_geodesic_point,
    hyperbolic_distance_to_geodesic,
    path_length,
    refine,
    reparametrize_arclength,
    with_crossings,
)
from .sampling import (
    random_algebraic,
    random_chart_path,
    random_geometric,
    random_point,
    random_tau,
    random_wall_tau,
    rng_from,
)

EQ_TOL = 1e-9
SEP_TOL = 1e-4
LENGTH_SLACK = 0.05
PHASE_GAP = 0.05

# fixed points of the non-length-space witness
WITNESS_DISTANCE = 0.25 * math.log(401.0)
SIGMA1 = Geometric(0.5 + 10j)
SIGMA2 = Boundary(0.5, WITNESS_DISTANCE, 0.0)
SIGMA3 = Algebraic(0, 0.0, 1.1, WITNESS_DISTANCE - math.log(2.0), 0.0)


@dataclass
class Report:
    name: str
    statement: str
    checks: dict[str, bool] = field(default_factory=dict)
    values: dict[str, object] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    seed: Optional[int] = None
    runtime: float = 0.0
    notes: list[str] = field(default_factory=list)
    artifacts: dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def status(self) -> str:
        return "pass" if all(self.checks.values()) else "fail"

    @property
    def failures(self) -> list[str]:
        return [k for k, ok in self.checks.items() if not ok]

    def check(self, name: str, ok: bool) -> bool:
        self.checks[name] = bool(ok)
        return bool(ok)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "statement": self.statement,
            "status": self.status,
            "checks": self.checks,
            "failures": self.failures,
            "values": self.values,
            "tolerances": self.tolerances,
            "seed": self.seed,
            "notes": self.notes,
        }
        if timing:
            out["runtime"] = self.runtime
        return out

    def summary(self) -> str:
        lines = [f"{self.name}: {self.status.upper()}"]
        for k, ok in self.checks.items():
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {k}")
        for k, v in self.values.items():
            lines.append(f"  {k} = {v}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime = time.perf_counter() - t0
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@dataclass(frozen=True)
class CounterexampleConfig:
    window: int = 10_000
    k_range: tuple[int, int] = (-50, 50)
    grid: int = 241
    tol: float = 1e-6
    n_paths: int = 100
    min_segments: int = 64
    seed: int = 0

    def search(self) -> WallSearch:
        return WallSearch(k_range=self.k_range, alpha_grid=tuple(np.linspace(-12.0, 12.0, self.grid)))


def _witness_check(rep: Report, cfg: CounterexampleConfig, quotient: bool, start: StabPoint) -> None:
    dist = quotient_distance if quotient else distance
    metric = "dbar" if quotient else "d"
    tol = cfg.tol
    d12, d13 = dist(start, SIGMA2).d, dist(start, SIGMA3).d
    rep.values.update({"d(s1,s2)": d12, "d(s1,s3)": d13, "expected": WITNESS_DISTANCE})
    rep.check("d(s1,s2) equals log(401)/4", abs(d12 - WITNESS_DISTANCE) <= min(tol, EQ_TOL))
    rep.check("d(s1,s3) equals log(401)/4", abs(d13 - WITNESS_DISTANCE) <= min(tol, EQ_TOL))

    if not quotient:
        bf = brute_force_distance(start, SIGMA3, cfg.window)
        slack = oracle_tail_bound(start, SIGMA3, cfg.window) + tol
        rep.values["oracle_d(s1,s3)"] = bf.d
        rep.check("closed form matches windowed oracle", abs(bf.d - d13) <= slack)

    search = cfg.search()
    if not isinstance(start, Geometric):
        rep.notes.append("start point is not geometric: the wall lower bound is vacuous and was skipped")
        return
    inf1, wall1 = boundary_infimum(start, search, quotient=quotient)
    inf3, wall3 = boundary_infimum(SIGMA3, search, quotient=quotient)
    rep.values.update(
        {
            "wall_inf(s1)": inf1,
            "wall_argmin_tau(s1)": wall1.tau,
            "wall_inf(s3)": inf3,
            "wall_argmin_tau(s3)": wall3.tau,
        }
    )
    rep.check("wall infimum from s1 >= d(s1,s2) - tol", inf1 >= d12 - tol)
    rep.check("wall infimum from s1 attained near tau = 1/2", abs(inf1 - d12) <= tol and abs(wall1.tau - 0.5) <= 1e-3)
    rep.check("wall infimum from s3 >= 0.05 - tol", inf3 >= PHASE_GAP - tol)

    rng = rng_from(cfg.seed)
    worst_margin = math.inf
    bad_crossing = 0
    for _ in range(cfg.n_paths):
        verts = random_chart_path(rng, start, SIGMA3, int(rng.integers(0, 6)))
        gamma = with_crossings(refine(Polyline(tuple(verts), metric), cfg.min_segments))
        if not boundary_crossings(gamma):
            bad_crossing += 1
        margin = path_length(gamma) - (d13 + PHASE_GAP)
        worst_margin = min(worst_margin, margin)
    rep.values["paths"] = cfg.n_paths
    rep.values["min L - (d + 0.05)"] = worst_margin
    rep.check("every sampled path meets the wall", bad_crossing == 0)
    rep.check("every sampled path has L >= d(s1,s3) + 0.05 - tol", worst_margin >= -tol)


@_timed
def verify_counterexample(cfg: CounterexampleConfig = CounterexampleConfig()) -> Report:
    """Distances to the wall exceed what a length metric would allow."""
    rep = Report(
        "counterexample",
        "the stability space with its canonical metric is not a length space",
        tolerances={"equality": min(cfg.tol, EQ_TOL), "inequality": cfg.tol},
        seed=cfg.seed,
    )
    _witness_check(rep, cfg, False, SIGMA1)
    return rep


@_timed
def verify_quotient_counterexample(
    cfg: CounterexampleConfig = CounterexampleConfig(), start: StabPoint = SIGMA1
) -> Report:
    """Same witness for the quotient by the C-action."""
    rep = Report(
        "quotient_counterexample",
        "the quotient by the C-action is not a length space",
        tolerances={"equality": min(cfg.tol, EQ_TOL), "inequality": cfg.tol},
        seed=cfg.seed,
    )
    _witness_check(rep, cfg, True, start)
    return rep


@_timed
def verify_nonunique_geodesic(eps: float = 0.01, n_samples: int = 129) -> Report:
    """Two distinct d_Z geodesics between the same endpoints."""
    if not 0.0 < eps <= 0.1:
        raise DomainError(f"epsilon must lie in (0, 0.1], got {eps}")
    rep = Report(
        "nonunique_geodesic",
        "d_Z is geodesic but not uniquely geodesic",
        tolerances={"additivity": EQ_TOL, "separation": SEP_TOL},
    )
    bent = bent_geodesic(eps, n_samples)
    p1, p2 = bent.points[0], bent.points[-1]
    straight = dZ_geodesic(p1, p2, n_samples)
    rb = additivity_check(bent.points, "dZ", EQ_TOL)
    rs = additivity_check(straight.points, "dZ", EQ_TOL)
    params = reparametrize_arclength(bent.points, "dZ", math.inf).params
    sep = [d_hyp(p, dZ_geodesic_point(p1, p2, float(s))) for p, s in zip(bent.points, params)]
    vertex = bent.points[len(bent) // 2]
    # Euclidean gap from the vertex to the geodesic circle through p1, p2
    foot = min(straight.points, key=lambda z: abs(z - vertex))
    rep.values.update(
        {
            "epsilon": eps,
            "endpoint_1": [p1.real, p1.imag],
            "endpoint_2": [p2.real, p2.imag],
            "vertex": [vertex.real, vertex.imag],
            "bent_additivity_defect": rb.additivity_defect,
            "geodesic_additivity_defect": rs.additivity_defect,
            "max_pointwise_separation_dhyp": max(sep),
            "vertex_to_geodesic_dhyp": hyperbolic_distance_to_geodesic(vertex, p1, p2),
            "vertex_to_geodesic_euclidean": abs(vertex - foot),
            "d_Z(endpoints)": d_Z(p1, p2),
        }
    )
    rep.check("bent path is additive under d_Z", rb.is_geodesic_within)
    rep.check("hyperbolic geodesic is additive under d_Z", rs.is_geodesic_within)
    rep.check("paths separate pointwise (hyperbolic distance) by > 1e-4", max(sep) > SEP_TOL)
    rep.artifacts["bent"] = bent
    rep.artifacts["geodesic"] = straight
    return rep


def _case_pair(rng: np.random.Generator, case: str) -> tuple[StabPoint, StabPoint]:
    if case == "a":
        other = random_geometric(rng, shifts=False)
        alg = random_algebraic(rng, shifts=False)
        if rng.random() < 0.2:
            alg = project_closure(alg)
        return (alg, other) if rng.random() < 0.5 else (other, alg)
    if case == "b":
        k = int(rng.integers(-5, 6))
        return random_algebraic(rng, False, k), random_algebraic(rng, False, k)
    k1 = int(rng.integers(-5, 6))
    k2 = k1 + int(rng.integers(1, 5)) * (1 if rng.random() < 0.5 else -1)
    return random_algebraic(rng, False, k1), random_algebraic(rng, False, k2)


@_timed
def verify_length_bound(samples: int = 100, seed: int = 0, n_samples: int = 64) -> Report:
    """Composite paths stay within twice the quotient distance (plus slack)."""
    if samples < 1:
        raise DomainError("need at least one sample")
    rep = Report(
        "length_bound",
        "the induced length metric on the quotient is at most twice the quotient metric",
        tolerances={"lower": EQ_TOL, "slack": LENGTH_SLACK, "straight_equality": EQ_TOL},
        seed=seed,
    )
    rng = rng_from(seed)
    for case in ("a", "b", "c"):
        worst_lower, worst_upper, worst_ratio, worst_eq = math.inf, math.inf, 0.0, 0.0
        for _ in range(samples):
            q1, q2 = _case_pair(rng, case)
            dbar = quotient_distance(q1, q2).d
            if dbar == 0.0:
                continue
            length = path_length(composite_path(q1, q2, n_samples))
            worst_lower = min(worst_lower, length - dbar)
            worst_upper = min(worst_upper, 2 * dbar + LENGTH_SLACK - length)
            worst_ratio = max(worst_ratio, length / dbar)
            if case == "b":
                worst_eq = max(worst_eq, abs(length - dbar))
        rep.values[f"case_{case}"] = {
            "min L - dbar": worst_lower,
            "min 2 dbar + 0.05 - L": worst_upper,
            "max L / dbar": worst_ratio,
        }
        rep.check(f"case ({case}): dbar <= L", worst_lower >= -EQ_TOL)
        rep.check(f"case ({case}): L <= 2 dbar + 0.05", worst_upper >= 0.0)
        if case == "b":
            rep.values["case_b"]["max |L - dbar|"] = worst_eq
            rep.check("case (b): straight path has L = dbar", worst_eq <= EQ_TOL)
    return rep


# -- property suite ------------------------------------------------------------


def _corrupted(dist: Callable) -> Callable:
    def bad(a, b):
        ta, tb = closure_coords(a)[0], closure_coords(b)[0]
        return dist(a, b) * (1.0 + 0.01 * np.sign(ta.real - tb.real))

    return bad


def _axioms(points_fn, dist, trials: int, rng) -> tuple[float, float, float]:
    sym = ident = tri = 0.0
    for _ in range(trials):
        a, b, c = points_fn(rng), points_fn(rng), points_fn(rng)
        dab, dba = dist(a, b), dist(b, a)
        sym = max(sym, abs(dab - dba))
        ident = max(ident, abs(dist(a, a)))
        tri = max(tri, dist(a, c) - dab - dist(b, c))
    return sym, ident, max(tri, 0.0)


@_timed
def run_property_suite(seed: int = 42, trials: int = 200, corrupt: bool = False, oracle_window: int = 2000) -> Report:
    """Worst defect of every invariant over seeded random inputs."""
    if trials < 1:
        raise DomainError("need at least one trial")
    rep = Report("property_suite", "module invariants hold on random inputs", seed=seed)
    rng = rng_from(seed)

    def record(name: str, defect: float, tol: float) -> None:
        rep.values[name] = defect
        rep.tolerances[name] = tol
        rep.check(name, defect <= tol)

    d_fn = (lambda a, b: distance(a, b).d)
    dbar_fn = (lambda a, b: quotient_distance(a, b).d)
    if corrupt:
        d_fn = _corrupted(d_fn)
    for label, pts, fn in (
        ("d", random_point, d_fn),
        ("dbar", lambda r: random_point(r, shifts=False), dbar_fn),
        ("dZ", lambda r: random_tau(r) if r.random() < 0.7 else complex(random_wall_tau(r)), d_Z),
    ):
        sym, ident, tri = _axioms(pts, fn, trials, rng)
        record(f"symmetry:{label}", sym, EQ_TOL)
        record(f"identity:{label}", ident, EQ_TOL)
        record(f"triangle:{label}", tri, EQ_TOL)

    worst_rt = worst_proj = worst_q = worst_oracle = worst_ext = worst_hyp = 0.0
    from .sampling import random_chart_point

    for _ in range(trials):
        c = random_chart_point(rng)
        back = stab_to_chart(chart_to_stab(c), c.k)
        worst_rt = max(worst_rt, max(abs(u - v) for u, v in zip(
            (c.alpha, c.beta, c.x, c.y), (back.alpha, back.beta, back.x, back.y))))

        a, b = random_point(rng), random_point(rng)
        worst_proj = max(worst_proj, abs(distance(a, b).d_mass - distance(project_closure(a), project_closure(b)).d_mass))
        bf = brute_force_distance(a, b, oracle_window)
        worst_oracle = max(worst_oracle, abs(bf.d - distance(a, b).d) - oracle_tail_bound(a, b, oracle_window))

        t1, t2 = random_tau(rng), random_tau(rng)
        worst_q = max(worst_q, abs(quotient_distance(Geometric(t1), Geometric(t2)).d_mass - 0.5 * d_Z(t1, t2)))
        worst_hyp = max(worst_hyp, abs(d_hyp(t1, t2) - d_hyp_closed_form(t1, t2)))
        ns = np.arange(-200, 201)
        logs = 0.5 * np.log(np.abs(t1 - ns) ** 2) - 0.5 * np.log(np.abs(t2 - ns) ** 2)
        args = np.angle((t1 - ns) / (t2 - ns))
        le, ae = lattice_log_extrema(t1, t2), lattice_arg_extrema(t1, t2)
        worst_ext = max(
            worst_ext,
            max(logs.max(), 0.0) - le.sup_value,
            le.inf_value - min(logs.min(), 0.0),
            max(args.max(), 0.0) - ae.sup_value,
            ae.inf_value - min(args.min(), 0.0),
        )

    record("round_trip:chart", worst_rt, 1e-12)
    record("mass_projection", worst_proj, 1e-12)
    record("quotient_mass_half_dZ", worst_q, 1e-12)
    record("oracle_excess_over_tail", max(worst_oracle, 0.0), 1e-6)
    record("lattice_extrema_vs_window", max(worst_ext, 0.0), 1e-12)
    record("dhyp_forms", worst_hyp, 1e-9)

    worst_sc = 0.0
    grid = np.linspace(-10.0, 10.0, 20001)
    for _ in range(min(trials, 50)):
        hi, lo = float(rng.uniform(0, 5)), float(-rng.uniform(0, 5))
        v, _ = supinf_center(hi, lo)
        g = np.maximum(np.maximum(np.abs(hi + grid), np.abs(lo + grid)), np.abs(grid)).min()
        worst_sc = max(worst_sc, v - g)
    record("supinf_center_not_above_grid", max(worst_sc, 0.0), 1e-12)

    worst_geo = worst_mono = worst_len = 0.0
    for _ in range(max(1, min(trials, 40))):
        p1, p2 = random_tau(rng), random_tau(rng)
        ss = np.sort(rng.uniform(0, 1, 5))
        pts = [p1] + [dZ_geodesic_point(p1, p2, float(s)) for s in ss] + [p2]
        worst_geo = max(worst_geo, additivity_check(pts, "dZ").additivity_defect)
        a, b = random_point(rng), random_point(rng)
        if a == b:
            continue
        try:
            gamma = Polyline((a, b), "d")
            finer = refine(gamma, 4)
        except DomainError:
            continue
        worst_mono = max(worst_mono, path_length(gamma) - path_length(finer))
        worst_len = max(worst_len, distance(a, b).d - path_length(finer))
    record("dZ_geodesic_additivity", worst_geo, EQ_TOL)
    record("refinement_monotone", max(worst_mono, 0.0), 1e-12)
    record("length_at_least_distance", max(worst_len, 0.0), 1e-12)
    return rep


__all__ = [
    "CounterexampleConfig",
    "Report",
    "SIGMA1",
    "SIGMA2",
    "SIGMA3",
    "WITNESS_DISTANCE",
    "run_property_suite",
    "verify_counterexample",
    "verify_length_bound",
    "verify_nonunique_geodesic",
    "verify_quotient_counterexample",
]

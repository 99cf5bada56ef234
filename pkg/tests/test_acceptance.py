"""End-to-end acceptance checks, one test per criterion, each printing a pass/fail line."""

import math

import numpy as np

from conftest import ACCEPTANCE_LINES
from frozen import QUARTER_LOG_401
from p1stab.coords import Geometric, chart_to_stab, project_closure, same_point, stab_to_chart
from p1stab.halfplane import d_Z, normalize_to_axis
from p1stab.lattice import lattice_arg_extrema, lattice_log_extrema, supinf_center, tail_bound
from p1stab.metric import brute_force_distance, distance, oracle_tail_bound, quotient_distance
from p1stab.paths import additivity_check, reparametrize_arclength
from p1stab.sampling import (
    random_algebraic,
    random_boundary,
    random_chart_point,
    random_geometric,
    random_point,
    random_tau,
    random_wall_tau,
)
from p1stab.verify import (
    CounterexampleConfig,
    verify_counterexample,
    verify_length_bound,
    verify_nonunique_geodesic,
    verify_quotient_counterexample,
)

SEED = 20240601


def record(label: str, ok: bool, detail: str) -> None:
    line = f"{label}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_ac01_counterexample():
    cfg = CounterexampleConfig()
    plain, quot = verify_counterexample(cfg), verify_quotient_counterexample(cfg)
    ok = plain.status == "pass" and quot.status == "pass"
    ok &= abs(plain.values["d(s1,s2)"] - QUARTER_LOG_401) <= 1e-9
    ok &= abs(plain.values["d(s1,s3)"] - QUARTER_LOG_401) <= 1e-9
    detail = (
        f"d={plain.values['d(s1,s3)']:.12f}, wall inf={plain.values['wall_inf(s1)']:.12f} "
        f"at tau={plain.values['wall_argmin_tau(s1)']:.6f}, gap(s3)={plain.values['wall_inf(s3)']:.6f}, "
        f"min path margin={plain.values['min L - (d + 0.05)']:.4f}/{quot.values['min L - (d + 0.05)']:.4f}; "
        f"failures={plain.failures + quot.failures}"
    )
    record("AC1 counterexample (plain and quotient)", ok, detail)


def test_ac02_quotient_mass_formula():
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(1000):
        t1, t2 = random_tau(rng), random_tau(rng)
        q = quotient_distance(Geometric(t1, *rng.uniform(-2, 2, 2)), Geometric(t2, *rng.uniform(-2, 2, 2)))
        worst = max(worst, abs(q.d_mass - 0.5 * d_Z(t1, t2)))
    exact = pairs = 0
    while pairs < 1000:
        t1 = complex(rng.uniform(-3, 3), math.exp(rng.uniform(-4, -1)))
        t2 = complex(rng.uniform(-3, 3), math.exp(rng.uniform(1, 4)))
        dz = d_Z(t1, t2)
        if dz < 2:
            continue
        pairs += 1
        exact += quotient_distance(Geometric(t1), Geometric(t2)).d == 0.5 * dz
    record("AC2 quotient mass = d_Z/2", worst <= 1e-12 and exact == pairs,
           f"worst |dbar_mass - d_Z/2| = {worst:.2e}; dbar == d_Z/2 on {exact}/{pairs} pairs with d_Z >= 2")


def _mixed_pair(rng, i):
    makers = (random_geometric, random_boundary, random_algebraic)
    return makers[i % 3](rng), makers[(i // 3) % 3](rng)


def test_ac03_oracle_equivalence():
    rng = np.random.default_rng(SEED + 3)
    worst = -math.inf
    for i in range(1000):
        a, b = _mixed_pair(rng, i)
        excess = abs(distance(a, b).d - brute_force_distance(a, b, 10_000).d) - oracle_tail_bound(a, b, 10_000)
        worst = max(worst, excess)
    ns = np.arange(-10_000, 10_001)
    worst_ext = -math.inf
    for _ in range(1000):
        t1, t2 = random_tau(rng), random_tau(rng)
        slack = tail_bound(t1, t2, 10_000)
        logs = np.log(np.abs(t1 - ns)) - np.log(np.abs(t2 - ns))
        args = np.angle((t1 - ns) / (t2 - ns))
        le, ae = lattice_log_extrema(t1, t2), lattice_arg_extrema(t1, t2)
        gaps = (
            abs(le.sup_value - max(logs.max(), 0.0)),
            abs(le.inf_value - min(logs.min(), 0.0)),
            abs(ae.sup_value - max(args.max(), 0.0)) / math.pi,
            abs(ae.inf_value - min(args.min(), 0.0)) / math.pi,
        )
        worst_ext = max(worst_ext, max(gaps) - slack)
    ok = worst <= 1e-9 and worst_ext <= 1e-9
    record("AC3 oracle equivalence", ok,
           f"max excess over tail bound: distance {worst:.2e}, lattice extrema {worst_ext:.2e}")


def test_ac04_metric_axioms():
    rng = np.random.default_rng(SEED + 4)
    spaces = {
        "d": (lambda: random_point(rng), lambda a, b: distance(a, b).d),
        "dbar": (lambda: random_point(rng, shifts=False), lambda a, b: quotient_distance(a, b).d),
        "dZ": (lambda: random_tau(rng) if rng.random() < 0.7 else complex(random_wall_tau(rng)), d_Z),
    }
    worst = {}
    for name, (draw, dist) in spaces.items():
        w = 0.0
        for _ in range(1000):
            a, b, c = draw(), draw(), draw()
            ab = dist(a, b)
            w = max(w, abs(ab - dist(b, a)), abs(dist(a, a)), dist(a, c) - ab - dist(b, c))
        worst[name] = w
    record("AC4 metric axioms", max(worst.values()) <= 1e-9,
           ", ".join(f"{k} defect {v:.2e}" for k, v in worst.items()))


def test_ac05_dZ_geodesics():
    rng = np.random.default_rng(SEED + 5)
    worst_add = worst_aff = 0.0
    for _ in range(200):
        p1, p2 = random_tau(rng), random_tau(rng)
        while abs(p1 - p2) < 1e-3:
            p2 = random_tau(rng)
        # sample by hyperbolic height on the normalised axis, independent of d_Z
        rho = normalize_to_axis(p1, p2)
        inv = rho.inverse()
        h1 = rho(p1).imag
        hs = np.exp(np.sort(rng.uniform(0, math.log(h1), 6)))[::-1]
        pts = [p1] + [inv(1j * h) for h in hs] + [p2]
        worst_add = max(worst_add, additivity_check(pts, "dZ").additivity_defect)
        r = reparametrize_arclength(pts, "dZ")
        total = r.length
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                worst_aff = max(worst_aff, abs(d_Z(pts[i], pts[j]) - (r.params[j] - r.params[i]) * total))
    record("AC5 d_Z geodesics", worst_add <= 1e-9 and worst_aff <= 1e-9,
           f"additivity defect {worst_add:.2e}, affine defect {worst_aff:.2e}")


def test_ac06_nonunique_geodesic():
    rep = verify_nonunique_geodesic(0.01)
    v = rep.values
    record("AC6 non-unique geodesics", rep.status == "pass",
           f"defects {v['bent_additivity_defect']:.1e}/{v['geodesic_additivity_defect']:.1e}, "
           f"separation (hyperbolic) {v['max_pointwise_separation_dhyp']:.2e}, "
           f"Euclidean vertex gap {v['vertex_to_geodesic_euclidean']:.2e}")


def test_ac07_mass_projection():
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for i in range(1000):
        a, b = _mixed_pair(rng, i)
        worst = max(worst, abs(distance(a, b).d_mass - distance(project_closure(a), project_closure(b)).d_mass))
    record("AC7 mass projection", worst <= 1e-12, f"worst change {worst:.2e}")


def _grid_min(hi: float, lo: float) -> float:
    f = lambda lam: np.maximum(np.maximum(np.abs(hi + lam), np.abs(lo + lam)), np.abs(lam))
    grid = np.arange(-100_000, 100_001) * 1e-4
    vals = f(grid)
    i = int(np.argmin(vals))
    # convex and piecewise linear: refine inside the neighbouring cells
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    for _ in range(100):
        m1, m2 = a + (b - a) / 3, b - (b - a) / 3
        if f(m1) <= f(m2):
            b = m2
        else:
            a = m1
    return float(min(vals[i], f(0.5 * (a + b))))


def test_ac08_supinf_center():
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for _ in range(500):
        hi, lo = float(rng.uniform(0, 10)), float(-rng.uniform(0, 10))
        worst = max(worst, abs(supinf_center(hi, lo)[0] - _grid_min(hi, lo)))
    record("AC8 sup-inf centre", worst <= 1e-6, f"worst gap to refined grid minimum {worst:.2e}")


def test_ac09_length_bound():
    rep = verify_length_bound(100, seed=SEED)
    parts = "; ".join(
        f"{c}: max L/dbar {rep.values[f'case_{c}']['max L / dbar']:.3f}" for c in "abc"
    )
    record("AC9 length-metric bound", rep.status == "pass",
           f"{parts}; case b |L - dbar| {rep.values['case_b']['max |L - dbar|']:.1e}; failures={rep.failures}")


def test_ac10_round_trips():
    rng = np.random.default_rng(SEED + 10)
    worst = 0.0
    walls = mismatched = 0
    for _ in range(1000):
        c = random_chart_point(rng, with_wall=0.25)
        walls += c.beta == 1.0
        s = chart_to_stab(c)
        back = stab_to_chart(s, c.k)
        worst = max(worst, *(abs(u - v) for u, v in zip((c.alpha, c.beta, c.x, c.y), (back.alpha, back.beta, back.x, back.y))))
        mismatched += not same_point(chart_to_stab(back), s, 1e-12)
    record("AC10 coordinate round trips", worst <= 1e-12 and walls > 0 and mismatched == 0,
           f"worst chart error {worst:.2e} over 1000 points ({walls} on the wall), {mismatched} point mismatches")

"""Seeded random generators for points, pairs and chart paths."""

from __future__ import annotations

import math

import numpy as np

from .coords import Algebraic, Boundary, ChartPoint, Geometric, StabPoint, chart_to_stab


def rng_from(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_tau(rng: np.random.Generator, re_span: float = 5.0, im_range=(0.05, 5.0)) -> complex:
    lo, hi = im_range
    im = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return complex(rng.uniform(-re_span, re_span), im)


def random_wall_tau(rng: np.random.Generator, k_span: int = 5, margin: float = 0.1) -> float:
    """Real point of ``R \\ Z`` at distance at least ``margin`` from the integers."""
    return int(rng.integers(-k_span, k_span + 1)) + rng.uniform(margin, 1.0 - margin)


def random_shift(rng: np.random.Generator, span: float = 2.0) -> tuple[float, float]:
    return float(rng.uniform(-span, span)), float(rng.uniform(-span, span))


def random_geometric(rng: np.random.Generator, shifts: bool = True) -> Geometric:
    x, y = random_shift(rng) if shifts else (0.0, 0.0)
    return Geometric(random_tau(rng), x, y)


def random_boundary(rng: np.random.Generator, shifts: bool = True) -> Boundary:
    x, y = random_shift(rng) if shifts else (0.0, 0.0)
    return Boundary(random_wall_tau(rng), x, y)


def random_algebraic(rng: np.random.Generator, shifts: bool = True, k: int | None = None) -> Algebraic:
    x, y = random_shift(rng) if shifts else (0.0, 0.0)
    kk = int(rng.integers(-5, 6)) if k is None else k
    return Algebraic(kk, float(rng.uniform(-2.0, 2.0)), float(rng.uniform(1.0, 2.5)) + 1e-3, x, y)


def random_point(rng: np.random.Generator, shifts: bool = True) -> StabPoint:
    kind = int(rng.integers(3))
    return (random_geometric, random_boundary, random_algebraic)[kind](rng, shifts)


def random_chart_point(rng: np.random.Generator, with_wall: float = 0.2) -> ChartPoint:
    """Chart coordinates with ``beta`` in ``(0, 1]``, hitting ``beta = 1`` with probability ``with_wall``."""
    beta = 1.0 if rng.random() < with_wall else float(rng.uniform(0.02, 1.0))
    return ChartPoint(
        int(rng.integers(-20, 21)),
        float(rng.uniform(-3.0, 3.0)),
        beta,
        float(rng.uniform(-3.0, 3.0)),
        float(rng.uniform(-3.0, 3.0)),
    )


def random_chart_path(rng: np.random.Generator, start: StabPoint, end: StabPoint, n_inner: int) -> list[StabPoint]:
    """Random vertices from ``start`` to ``end``, chart-linear between consecutive ones.

    Algebraic vertices of different chambers are separated by a geometric
    vertex so every segment has a common chart.
    """
    inner: list[StabPoint] = []
    for _ in range(n_inner):
        r = rng.random()
        if r < 0.5:
            inner.append(Geometric(complex(rng.uniform(-2.0, 3.0), math.exp(rng.uniform(-3.0, 3.0))), *random_shift(rng)))
        elif r < 0.85:
            inner.append(chart_to_stab(ChartPoint(0, float(rng.uniform(-3.0, 3.0)), float(rng.uniform(0.2, 1.8)), *random_shift(rng))))
        else:
            inner.append(random_algebraic(rng))
    verts = [start] + inner + [end]
    out: list[StabPoint] = [verts[0]]
    for v in verts[1:]:
        prev = out[-1]
        if not isinstance(prev, Geometric) and not isinstance(v, Geometric) and prev.k != v.k:
            out.append(Geometric(complex(rng.uniform(-2.0, 3.0), math.exp(rng.uniform(-2.0, 2.0)))))
        if v != out[-1]:
            out.append(v)
    return out

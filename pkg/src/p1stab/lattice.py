"""Exact suprema and infima over the integers of log-ratio and argument profiles.

For two closure points ``t1, t2`` of the upper half-plane the functions

    f(n) = log|t1 - n| - log|t2 - n|,      h(n) = arg((t1 - n) / (t2 - n))

both tend to 0 as ``|n| -> oo``.  Their real extensions are monotone between
consecutive critical points (roots of a quadratic) and poles, so the extrema
over ``Z`` sit at integers next to those break points or in the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .coords import DomainError

# Integers beyond this are not represented exactly and f, h are ~0 there anyway.
_MAX_CANDIDATE = 2.0**52


@dataclass(frozen=True)
class LatticeExtrema:
    sup_value: float
    sup_attained_at: Optional[int]
    inf_value: float
    inf_attained_at: Optional[int]

    @property
    def spread(self) -> float:
        return self.sup_value - self.inf_value


def _closure_point(t) -> complex:
    t = complex(t)
    if not (math.isfinite(t.real) and math.isfinite(t.imag)):
        raise DomainError(f"non-finite point {t}")
    if t.imag < 0:
        raise DomainError(f"point {t} is below the real axis")
    if t.imag == 0 and t.real == math.floor(t.real):
        raise DomainError(f"integer boundary point {t.real}: some O(n) has zero mass")
    return t


def quadratic_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of ``a t^2 + b t + c``; handles the linear and constant cases."""
    if a == 0:
        if b == 0:
            return []
        return [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    roots = [q / a]
    if q != 0:
        roots.append(c / q)
    return roots


def _candidates(breaks: Iterable[float]) -> list[int]:
    out: set[int] = set()
    for r in breaks:
        if not math.isfinite(r) or abs(r) > _MAX_CANDIDATE:
            continue
        f = math.floor(r)
        out.update(range(f - 1, f + 3))
    return sorted(out)


def _extremize(values: Callable[[int], float], cands: list[int]) -> LatticeExtrema:
    # the tail limit 0 always belongs to the closure of the value set
    sup_v, sup_at, inf_v, inf_at = 0.0, None, 0.0, None
    for n in cands:
        v = values(n)
        if v > sup_v:
            sup_v, sup_at = v, n
        if v < inf_v:
            inf_v, inf_at = v, n
    return LatticeExtrema(sup_v, sup_at, inf_v, inf_at)


def log_ratio(t1: complex, t2: complex, n: int) -> float:
    """``log|t1 - n| - log|t2 - n|`` evaluated without cancellation."""
    a1, b1, a2, b2 = t1.real, t1.imag, t2.real, t2.imag
    num = (a1 - a2) * (a1 + a2 - 2 * n) + (b1 - b2) * (b1 + b2)
    den = (a2 - n) ** 2 + b2 * b2
    r = num / den
    if abs(r) < 0.5:
        return 0.5 * math.log1p(r)
    return math.log(math.hypot(a1 - n, b1)) - math.log(math.hypot(a2 - n, b2))


def arg_ratio(t1: complex, t2: complex, n: int) -> float:
    """``arg((t1 - n)/(t2 - n))`` in ``(-pi, pi)``."""
    a1, b1, a2, b2 = t1.real - n, t1.imag, t2.real - n, t2.imag
    return math.atan2(b1 * a2 - a1 * b2, a1 * a2 + b1 * b2)


def lattice_log_extrema(t1, t2) -> LatticeExtrema:
    """Sup and inf over ``n`` in Z of ``log|t1 - n| - log|t2 - n|``."""
    t1, t2 = _closure_point(t1), _closure_point(t2)
    a1, b1, a2, b2 = t1.real, t1.imag, t2.real, t2.imag
    # f'(t) = 0  <=>  (t-a1)|t2-t|^2 = (t-a2)|t1-t|^2
    roots = quadratic_roots(
        a1 - a2,
        (a2 * a2 + b2 * b2) - (a1 * a1 + b1 * b1),
        (a1 - a2) * a1 * a2 - b2 * b2 * a1 + b1 * b1 * a2,
    )
    poles = [t.real for t in (t1, t2) if t.imag == 0]
    return _extremize(lambda n: log_ratio(t1, t2, n), _candidates(roots + poles))


def lattice_arg_extrema(t1, t2) -> LatticeExtrema:
    """Sup and inf over ``n`` in Z of ``arg((t1 - n)/(t2 - n))`` for interior points."""
    t1, t2 = _closure_point(t1), _closure_point(t2)
    if t1.imag == 0 or t2.imag == 0:
        raise DomainError("argument profile is only defined for points with Im > 0")
    a1, b1, a2, b2 = t1.real, t1.imag, t2.real, t2.imag
    # h'(t) = b1/|t1-t|^2 - b2/|t2-t|^2
    roots = quadratic_roots(
        b1 - b2,
        -2.0 * (b1 * a2 - b2 * a1),
        b1 * (a2 * a2 + b2 * b2) - b2 * (a1 * a1 + b1 * b1),
    )
    return _extremize(lambda n: arg_ratio(t1, t2, n), _candidates(roots))


def supinf_center(sup_a: float, inf_a: float) -> tuple[float, float]:
    """Minimise ``max(sup|A + lam|, |lam|)`` over ``lam``.

    Returns ``(value, lam_star)`` with ``value = (sup - inf)/2`` attained at
    ``lam_star = -(sup + inf)/2``.  Requires ``sup_a >= 0 >= inf_a``.
    """
    if not (sup_a >= 0 >= inf_a):
        raise DomainError(f"need sup >= 0 >= inf, got sup={sup_a}, inf={inf_a}")
    return 0.5 * (sup_a - inf_a), -0.5 * (sup_a + inf_a)


def tail_bound(t1, t2, window: int) -> float:
    """Bound on ``|f(n)|`` and ``|h(n)|/pi`` over ``|n| > window``."""
    t1, t2 = complex(t1), complex(t2)
    gap = window + 1 - max(abs(t1), abs(t2))
    return abs(t1 - t2) / max(1.0, gap)

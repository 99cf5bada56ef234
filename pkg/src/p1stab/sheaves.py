"""Test objects on P^1 and their central charges, masses and extremal phases.

Line bundles ``O(n)`` and the skyscraper ``O_pt`` are enough to evaluate the
metric, since every coherent sheaf on P^1 splits into a sum of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .coords import Algebraic, Boundary, ChartPoint, DomainError, Geometric, StabPoint


@dataclass(frozen=True)
class LineBundle:
    n: int

    @property
    def rank(self) -> int:
        return 1

    @property
    def degree(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"O({self.n})"


@dataclass(frozen=True)
class Skyscraper:
    @property
    def rank(self) -> int:
        return 0

    @property
    def degree(self) -> int:
        return 1

    def __str__(self) -> str:
        return "O_pt"


SheafClass = Union[LineBundle, Skyscraper]


class MassPhase(NamedTuple):
    m: float
    phi_plus: float
    phi_minus: float


def enumerate_test_objects(n_min: int, n_max: int) -> list[SheafClass]:
    """``O(n_min), ..., O(n_max)`` followed by the skyscraper."""
    if n_min > n_max:
        raise DomainError(f"empty line bundle range [{n_min}, {n_max}]")
    return [LineBundle(n) for n in range(n_min, n_max + 1)] + [Skyscraper()]


def central_charge(s: StabPoint, c: SheafClass) -> complex:
    r, d = c.rank, c.degree
    if isinstance(s, Algebraic):
        # [E] = a[O(k)] + b[O(k+1)] in (rank, degree) coordinates
        b = d - s.k * r
        a = r - b
        z0 = complex(math.exp(s.x) * math.cos(math.pi * s.y), math.exp(s.x) * math.sin(math.pi * s.y))
        z1 = z0 * math.exp(s.alpha) * complex(math.cos(math.pi * s.beta), math.sin(math.pi * s.beta))
        return a * z0 + b * z1
    scale = math.exp(s.x) * complex(math.cos(math.pi * s.y), math.sin(math.pi * s.y))
    return scale * (-d + complex(s.tau) * r)


def line_bundle_table(s: StabPoint, ns) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised ``(m, phi+, phi-)`` of ``O(n)`` for every ``n`` in ``ns``."""
    n = np.asarray(ns, dtype=float)
    if isinstance(s, Geometric):
        diff = s.tau - n
        m = math.exp(s.x) * np.abs(diff)
        phi = s.y + np.angle(diff) / math.pi
        return m, phi, phi.copy()
    if isinstance(s, Boundary):
        m = math.exp(s.x) * np.abs(s.tau - n)
        phi = np.where(n <= s.k, s.y, s.y + 1.0)
        return m, phi, phi.copy()
    k, ea, ex = s.k, math.exp(s.alpha), math.exp(s.x)
    below, above = n < k, n > k + 1
    m = np.where(
        below,
        ((k - n) * ea + (k - n + 1)) * ex,
        np.where(above, ((n - k) * ea + (n - k - 1)) * ex, np.where(n == k, ex, ea * ex)),
    )
    phi_plus = np.where(below, (s.beta - 1.0) + s.y, np.where(n == k, s.y, s.beta + s.y))
    phi_minus = np.where(below | (n == k), s.y, np.where(above, s.y + 1.0, s.beta + s.y))
    return m, phi_plus, phi_minus


def skyscraper_mass_phase(s: StabPoint) -> MassPhase:
    if isinstance(s, Algebraic):
        return MassPhase((math.exp(s.alpha) + 1.0) * math.exp(s.x), s.beta + s.y, s.y + 1.0)
    return MassPhase(math.exp(s.x), s.y + 1.0, s.y + 1.0)


def mass_phase(s: StabPoint, c: SheafClass) -> MassPhase:
    """Mass and extremal HN phases of ``c`` under ``s``.

    Wall points use the semistable limits: ``O(n)`` has phase ``y`` for
    ``n <= k`` and ``y + 1`` for ``n >= k + 1``.
    """
    if isinstance(c, Skyscraper):
        return skyscraper_mass_phase(s)
    m, pp, pm = line_bundle_table(s, [c.n])
    return MassPhase(float(m[0]), float(pp[0]), float(pm[0]))


def chart_mass(p: ChartPoint, c: SheafClass) -> float:
    """Masses of a geometric point (``0 < beta < 1``) read off in ``X_k`` coordinates."""
    if not p.is_geometric:
        raise DomainError("chart masses are tabulated for 0 < beta < 1 only")
    w = math.exp(p.alpha) * complex(math.cos(math.pi * p.beta), math.sin(math.pi * p.beta))
    ex = math.exp(p.x)
    if isinstance(c, Skyscraper):
        return abs(w - 1.0) * ex
    j = c.n - p.k
    if j < 0:
        return abs(-j * w - (-j + 1)) * ex
    if j == 0:
        return ex
    if j == 1:
        return math.exp(p.alpha) * ex
    return abs(j * w - (j - 1)) * ex


def sheaf_to_json(c: SheafClass) -> dict:
    if isinstance(c, LineBundle):
        return {"type": "line_bundle", "n": c.n}
    return {"type": "skyscraper"}


def sheaf_from_json(obj: dict) -> SheafClass:
    kind = obj.get("type")
    if kind == "line_bundle":
        return LineBundle(int(obj["n"]))
    if kind == "skyscraper":
        return Skyscraper()
    raise DomainError(f"unknown sheaf type {kind!r}")

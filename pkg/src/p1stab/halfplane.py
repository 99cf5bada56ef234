"""Hyperbolic and lattice-anchored metrics on the upper half-plane.

``d_hyp`` is the Poincare metric written as a cross-ratio with the geodesic
endpoints.  ``d_Z`` takes the same cross-ratio but only lets the anchors range
over the integers; it stays finite on ``R \\ Z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .coords import DomainError
from .lattice import _candidates, _closure_point, lattice_log_extrema, quadratic_roots


class _PointAtInfinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _PointAtInfinity()
ExtendedPoint = Union[complex, _PointAtInfinity]


def as_hpoint(z) -> complex:
    """Validate a point of ``H u (R \\ Z)``."""
    return _closure_point(z)


def _interior(z) -> complex:
    z = as_hpoint(z)
    if z.imag == 0:
        raise DomainError(f"{z.real} is on the ideal boundary: hyperbolic distance is infinite")
    return z


@dataclass(frozen=True)
class MoebiusMap:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        if not self.det > 0:
            raise DomainError(f"Moebius map needs ad - bc > 0, got {self.det}")

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __call__(self, z: ExtendedPoint) -> ExtendedPoint:
        if z is INFINITY:
            return INFINITY if self.c == 0 else complex(self.a / self.c)
        num = self.a * z + self.b
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        return num / den

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MoebiusMap") -> "MoebiusMap":
        """``self o other``."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def normalized(self) -> "MoebiusMap":
        s = math.sqrt(self.det)
        return MoebiusMap(self.a / s, self.b / s, self.c / s, self.d / s)


def geodesic_endpoints(z1: complex, z2: complex) -> tuple[tuple[float, float], tuple[float, float]]:
    """Endpoints of the hyperbolic geodesic through ``z1, z2`` as homogeneous pairs ``(p, q)``.

    The geodesic is ``a|z|^2 + b Re z + e = 0``; ``q = 0`` encodes infinity.
    """
    size = max(abs(z1), abs(z2))
    if abs(z1.real - z2.real) <= 1e-15 * size:
        if abs(z1.imag - z2.imag) <= 1e-15 * size:
            raise DomainError("points coincide")
        # vertical geodesic: infinity and the common real part
        return (1.0, 0.0), (0.5 * (z1.real + z2.real), 1.0)
    a = z1.real - z2.real
    b = (z2.real - z1.real) * (z2.real + z1.real) + (z2.imag - z1.imag) * (z2.imag + z1.imag)
    e = -a * abs(z1) ** 2 - b * z1.real
    scale = max(abs(a), abs(b), abs(e))
    if scale == 0:
        raise DomainError("points coincide")
    a, b, e = a / scale, b / scale, e / scale
    disc = b * b - 4 * a * e
    if disc <= 0:
        raise DomainError("points coincide")
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    return (q, a), (e, q)


def _hom_dist(z: complex, end: tuple[float, float]) -> float:
    p, q = end
    return abs(q * z - p)


def d_hyp(z1, z2) -> float:
    """Poincare distance via the endpoint cross-ratio."""
    z1, z2 = _interior(z1), _interior(z2)
    if abs(z1 - z2) <= 1e-15 * max(abs(z1), abs(z2)):
        # endpoints are not resolvable; the closed form is exact here
        return d_hyp_closed_form(z1, z2)
    e1, e2 = geodesic_endpoints(z1, z2)
    # orient so that e1 is the endpoint on z1's side; the |q| factors cancel
    r = (_hom_dist(z1, e2) * _hom_dist(z2, e1)) / (_hom_dist(z2, e2) * _hom_dist(z1, e1))
    return abs(math.log(r))


def d_hyp_closed_form(z1, z2) -> float:
    """``2 asinh(|z1 - z2| / (2 sqrt(Im z1 Im z2)))``, i.e. ``cosh d = 1 + |z1-z2|^2/(2 Im z1 Im z2)``."""
    z1, z2 = _interior(z1), _interior(z2)
    return 2.0 * math.asinh(abs(z1 - z2) / (2.0 * math.sqrt(z1.imag * z2.imag)))


def d_Z(p1, p2) -> float:
    """Integer-anchored cross-ratio metric on ``H u (R \\ Z)``."""
    return lattice_log_extrema(p1, p2).spread


def normalize_to_axis(z1, z2) -> MoebiusMap:
    """Isometry sending ``z1, z2`` onto the imaginary axis with ``rho(z2) = i`` and ``Im rho(z1) > 1``."""
    z1, z2 = _interior(z1), _interior(z2)
    if z1 == z2:
        raise DomainError("cannot normalise a pair of equal points")
    ends = geodesic_endpoints(z1, z2)
    for (p1, q1), (p2, q2) in (ends, ends[::-1]):
        # z -> (q2 z - p2)/(q1 z - p1) sends the first endpoint to oo, the second to 0
        a, b, c, d = q2, -p2, q1, -p1
        if a * d - b * c < 0:
            a, b = -a, -b
        rho = MoebiusMap(a, b, c, d).normalized()
        w1, w2 = rho(z1), rho(z2)
        if w1.imag > w2.imag:
            break
    scale = 1.0 / w2.imag
    return MoebiusMap(rho.a * scale, rho.b * scale, rho.c, rho.d)


def lattice_image_extrema(rho: MoebiusMap) -> tuple[float, Union[float, _PointAtInfinity]]:
    """``(inf, sup)`` of ``|rho(s)|`` over ``s`` in Z.

    ``|rho|`` is monotone on the real line between its zero, its pole and
    infinity, so integers adjacent to those plus the limit ``|a/c|`` suffice.
    """
    breaks = []
    if rho.a != 0:
        breaks.append(-rho.b / rho.a)
    if rho.c != 0:
        breaks.append(-rho.d / rho.c)
    cands = _candidates(breaks)
    lo = math.inf
    hi: Union[float, _PointAtInfinity] = INFINITY if rho.c == 0 else abs(rho.a / rho.c)
    if rho.c != 0:
        lo = abs(rho.a / rho.c)
    for s in cands:
        w = rho(complex(s))
        if w is INFINITY or not math.isfinite(abs(w)):
            hi = INFINITY
            continue
        v = abs(w)
        lo = min(lo, v)
        if hi is not INFINITY:
            hi = max(hi, v)
    return lo, hi


def d_Z_via_normalization(z1, z2) -> float:
    """``d_Z`` computed after moving the pair onto the imaginary axis."""
    z1, z2 = _interior(z1), _interior(z2)
    if abs(z1 - z2) <= 1e-15 * max(abs(z1), abs(z2)):
        return 0.0
    rho = normalize_to_axis(z1, z2)
    m, big_m = lattice_image_extrema(rho)
    h1, h2 = rho(z1).imag, rho(z2).imag
    # |ih - t| depends on |t| only, for real t
    out = math.log(math.hypot(h1, m)) - math.log(math.hypot(h2, m))
    if big_m is not INFINITY:
        out += math.log(math.hypot(h2, big_m)) - math.log(math.hypot(h1, big_m))
    return out


def axis_dZ_profile(rho: MoebiusMap):
    """Return ``F`` with ``d_Z(rho^-1(i h1), rho^-1(i h2)) = F(h1) - F(h2)`` for ``h1 >= h2``."""
    m, big_m = lattice_image_extrema(rho)

    def profile(h: float) -> float:
        v = math.log(math.hypot(h, m))
        if big_m is not INFINITY:
            v -= math.log(math.hypot(h, big_m))
        return v

    return profile


__all__ = [
    "INFINITY",
    "MoebiusMap",
    "as_hpoint",
    "axis_dZ_profile",
    "d_Z",
    "d_Z_via_normalization",
    "d_hyp",
    "d_hyp_closed_form",
    "geodesic_endpoints",
    "lattice_image_extrema",
    "normalize_to_axis",
    "quadratic_roots",
]

"""Coordinates on the stability space of the projective line.

Three point forms are used throughout the package:

* ``Geometric(tau, x, y)`` with ``Im tau > 0``;
* ``Boundary(tau, x, y)`` with ``tau`` real and non-integer, the wall of the
  geometric chamber;
* ``Algebraic(k, alpha, beta, x, y)`` with ``beta >= 1``, a point of the
  chamber ``X_k`` outside the geometric region.

``ChartPoint`` holds ``X_k`` coordinates, which cover geometric points
(``0 < beta < 1``) as well as the wall and the algebraic chamber.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from typing import Union


class DomainError(ValueError):
    """Input outside the domain of an operation."""


class ChamberMismatch(DomainError):
    """A point does not live in the requested chart ``X_k``."""


def _check_finite(**values: float) -> None:
    for name, v in values.items():
        if not math.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Geometric:
    tau: complex
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self) -> None:
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        _check_finite(re=tau.real, im=tau.imag, x=self.x, y=self.y)
        if not tau.imag > 0:
            raise DomainError(f"geometric point needs Im tau > 0, got {tau}")

    @property
    def form(self) -> str:
        return "geometric"


@dataclass(frozen=True)
class Boundary:
    tau: float
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self) -> None:
        tau = float(self.tau)
        object.__setattr__(self, "tau", tau)
        _check_finite(tau=tau, x=self.x, y=self.y)
        if tau == math.floor(tau):
            raise DomainError(f"boundary parameter must be non-integer, got {tau}")

    @property
    def k(self) -> int:
        return math.floor(self.tau)

    @property
    def form(self) -> str:
        return "boundary"


@dataclass(frozen=True)
class Algebraic:
    k: int
    alpha: float
    beta: float
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self) -> None:
        if int(self.k) != self.k:
            raise DomainError(f"chamber index must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        _check_finite(alpha=self.alpha, beta=self.beta, x=self.x, y=self.y)
        if self.beta < 1:
            raise DomainError(f"algebraic point needs beta >= 1, got {self.beta}")

    @property
    def form(self) -> str:
        return "algebraic"


StabPoint = Union[Geometric, Boundary, Algebraic]


@dataclass(frozen=True)
class ChartPoint:
    k: int
    alpha: float
    beta: float
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self) -> None:
        if int(self.k) != self.k:
            raise DomainError(f"chamber index must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        _check_finite(alpha=self.alpha, beta=self.beta, x=self.x, y=self.y)
        if not self.beta > 0:
            raise DomainError(f"chart point needs beta > 0, got {self.beta}")

    @property
    def is_geometric(self) -> bool:
        return self.beta < 1


def one_minus_exp(alpha: float, beta: float) -> complex:
    """``1 - exp(alpha + i*pi*beta)`` without cancellation near 1."""
    b = math.pi * beta
    re = -(math.expm1(alpha) * math.cos(b) - 2.0 * math.sin(0.5 * b) ** 2)
    im = -math.exp(alpha) * math.sin(b)
    return complex(re, im)


def chart_to_stab(p: ChartPoint) -> StabPoint:
    """Convert ``X_k`` chart coordinates to the canonical point form."""
    if p.beta > 1:
        return Algebraic(p.k, p.alpha, p.beta, p.x, p.y)
    if p.beta == 1:
        # log(1 + e^alpha), 1/(1 + e^alpha) in overflow-safe form
        softplus = max(p.alpha, 0.0) + math.log1p(math.exp(-abs(p.alpha)))
        offset = math.exp(-softplus)
        if not 0.0 < offset < 1.0:
            raise DomainError(f"alpha={p.alpha} puts the boundary point on an integer")
        return Boundary(p.k + offset, p.x + softplus, p.y)
    u = one_minus_exp(p.alpha, p.beta)
    # arg(u) lies in (-pi, 0) since Im u = -e^alpha sin(pi beta) < 0
    return Geometric(p.k + 1.0 / u, p.x + math.log(abs(u)), p.y + cmath.phase(u) / math.pi)


def chamber_of(s: StabPoint) -> int | None:
    """Chamber index of a wall or algebraic point; ``None`` for geometric points."""
    if isinstance(s, Geometric):
        return None
    return s.k


def stab_to_chart(s: StabPoint, k: int | None = None) -> ChartPoint:
    """``X_k`` coordinates of ``s``.

    ``k`` is required for geometric points (every chart contains them) and
    defaults to the point's own chamber otherwise.
    """
    if isinstance(s, Geometric):
        if k is None:
            raise DomainError("a chart index is required for geometric points")
        v = s.tau - k
        inv = 1.0 / v
        # w = 1 - 1/v; |w|^2 = 1 - 2 Re(1/v) + |1/v|^2
        alpha = 0.5 * math.log1p(-2.0 * inv.real + abs(inv) ** 2)
        beta = math.atan2(-inv.imag, 1.0 - inv.real) / math.pi
        return ChartPoint(k, alpha, beta, s.x + math.log(abs(v)), s.y + cmath.phase(v) / math.pi)
    if k is not None and k != s.k:
        raise ChamberMismatch(f"{s.form} point lies in X_{s.k}, not X_{k}")
    if isinstance(s, Boundary):
        v = s.tau - s.k
        return ChartPoint(s.k, math.log1p(-v) - math.log(v), 1.0, s.x + math.log(v), s.y)
    return ChartPoint(s.k, s.alpha, s.beta, s.x, s.y)


def canonical(s: StabPoint) -> StabPoint:
    """Store points on the wall ``beta == 1`` in boundary form."""
    if isinstance(s, Algebraic) and s.beta == 1:
        return chart_to_stab(ChartPoint(s.k, s.alpha, 1.0, s.x, s.y))
    return s


def project_closure(s: StabPoint) -> StabPoint:
    """Collapse an algebraic point onto the wall of its chamber (``beta -> 1``)."""
    if isinstance(s, Algebraic):
        return chart_to_stab(ChartPoint(s.k, s.alpha, 1.0, s.x, s.y))
    return s


def closure_coords(s: StabPoint) -> tuple[complex, float, float]:
    """``(tau, x, y)`` of ``project_closure(s)``; ``tau`` real on the wall."""
    p = project_closure(s)
    return complex(p.tau), p.x, p.y


def c_act(s: StabPoint, shift: tuple[float, float]) -> StabPoint:
    """Act by ``(x0, y0)``: rescale masses by ``e^x0`` and shift phases by ``y0``."""
    x0, y0 = shift
    return replace(s, x=s.x + x0, y=s.y + y0)


def orbit_rep(s: StabPoint) -> StabPoint:
    """Representative of the orbit of ``s`` under the C-action, with ``x = y = 0``."""
    return replace(s, x=0.0, y=0.0)


def same_point(a: StabPoint, b: StabPoint, tol: float = 1e-12) -> bool:
    """Compare canonical forms coordinate-wise within ``tol``."""
    a, b = canonical(a), canonical(b)
    if type(a) is not type(b):
        return False
    if isinstance(a, Algebraic):
        if a.k != b.k:
            return False
        pairs = [(a.alpha, b.alpha), (a.beta, b.beta)]
    else:
        pairs = [(complex(a.tau).real, complex(b.tau).real), (complex(a.tau).imag, complex(b.tau).imag)]
    pairs += [(a.x, b.x), (a.y, b.y)]
    return all(abs(u - v) <= tol for u, v in pairs)


def to_json(s: StabPoint) -> dict:
    if isinstance(s, Geometric):
        return {"form": "geometric", "tau": [s.tau.real, s.tau.imag], "x": s.x, "y": s.y}
    if isinstance(s, Boundary):
        return {"form": "boundary", "tau": s.tau, "x": s.x, "y": s.y}
    return {"form": "algebraic", "k": s.k, "alpha": s.alpha, "beta": s.beta, "x": s.x, "y": s.y}


def from_json(obj: dict) -> StabPoint:
    form = obj.get("form")
    x = float(obj.get("x", 0.0))
    y = float(obj.get("y", 0.0))
    if form == "geometric":
        re, im = obj["tau"]
        return Geometric(complex(float(re), float(im)), x, y)
    if form == "boundary":
        return Boundary(float(obj["tau"]), x, y)
    if form == "algebraic":
        return canonical(Algebraic(int(obj["k"]), float(obj["alpha"]), float(obj["beta"]), x, y))
    raise DomainError(f"unknown point form {form!r}")

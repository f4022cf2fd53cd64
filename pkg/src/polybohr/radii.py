"""Closed forms and bracketed root finding for every sharp-radius equation.

Each radius family carries its defining polynomial and the bracket on which
the underlying monotonicity argument guarantees a sign change.  Bisection is
used throughout: the equations are low-degree with proof-supplied brackets,
so robustness beats iteration speed.  Results report the root both as the
equal polyradius r and as x = n r, which neutralises the scaling ambiguity
between the two conventions.

Solve variables by family (the argument of ``poly``):

* ``Classical``, ``AN``, ``ConvexMNT``, ``EulerLambda``, ``AreaT``: x = n r,
* ``RogosinskiUni``, ``RmN``, ``RmnN``, ``ConvexT``: the radius r itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

BISECTION_TOL = 1e-14
BISECTION_MAX_ITER = 60
MIN_ROOT_GRID = 10_000
RESIDUAL_GATE = 1e-12


class NoSignChangeError(ValueError):
    """No bracketing sign change was found on the scanned interval."""


def bracketed_bisection(g: Callable[[float], float], lo: float, hi: float,
                        tol: float = BISECTION_TOL) -> tuple[float, float, float]:
    """Root of g on [lo, hi] by bisection; returns (root, lo, hi) with the
    final bracket.  Requires a strict sign change g(lo) g(hi) < 0;
    the interval shrinks to width <= tol within at most 60 iterations."""
    glo, ghi = g(lo), g(hi)
    if glo == 0.0:
        return lo, lo, hi
    if ghi == 0.0:
        return hi, lo, hi
    if glo * ghi > 0.0:
        raise NoSignChangeError(
            f"g({lo}) = {glo} and g({hi}) = {ghi} have the same sign")
    for _ in range(BISECTION_MAX_ITER):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid, lo, hi
        if glo * gm < 0.0:
            hi, ghi = mid, gm
        else:
            lo, glo = mid, gm
    return 0.5 * (lo + hi), lo, hi


def min_positive_root(g: Callable[[float], float], hi: float,
                      grid_points: int = MIN_ROOT_GRID,
                      tol: float = BISECTION_TOL) -> tuple[float, float, float, str]:
    """Smallest positive root of g on (0, hi]: uniform grid scan for the first
    sign change, then bisection.  Later sign changes on the grid are reported
    in the note so root selection stays auditable."""
    if grid_points < 10:
        raise ValueError(f"grid must have at least 10 points, got {grid_points}")
    h = hi / grid_points
    prev_x, prev_v = h, g(h)
    if prev_v == 0.0:
        return prev_x, prev_x, prev_x, "root on the scan grid"
    first: tuple[float, float] | None = None
    extra: list[float] = []
    for i in range(2, grid_points + 1):
        x, v = i * h, g(i * h)
        # An exact zero at the high end without a sign change (a boundary
        # double root) is not a crossing; it surfaces through the error path.
        crossing = prev_v * v < 0.0 or (v == 0.0 and i < grid_points)
        if crossing:
            if first is None:
                first = (prev_x, x)
            else:
                extra.append(x)
        prev_x, prev_v = x, v
    if first is None:
        boundary = g(hi)
        raise NoSignChangeError(
            f"no sign change on ({h}, {hi}] scanned at {grid_points} points; "
            f"value at the high end is {boundary}"
            + (" (boundary root)" if abs(boundary) < 1e-9 else ""))
    root, lo, hi_b = bracketed_bisection(g, first[0], first[1], tol)
    if extra:
        note = ("additional sign changes near "
                + ", ".join(f"{x:.6g}" for x in extra[:4]))
    else:
        note = f"no further sign changes in ({root:.6g}, {hi:g})"
    return root, lo, hi_b, note


SQRT2_MINUS_1 = math.sqrt(2.0) - 1.0


@dataclass(frozen=True)
class Classical:
    """Plain majorant threshold; the radius is 1/(3n) in closed form."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")

    def poly(self, x: float) -> float:
        return 3.0 * x - 1.0


@dataclass(frozen=True)
class RogosinskiUni:
    """Univariate |f(z)|^p head with a degree >= N majorant tail."""

    N: int
    p: int = 1

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.p not in (1, 2):
            raise ValueError(f"modulus power must be 1 or 2, got {self.p}")

    def poly(self, r: float) -> float:
        head = 2.0 if self.p == 1 else 1.0
        return head * (1.0 + r) * r ** self.N - (1.0 - r * r)


@dataclass(frozen=True)
class RmN:
    """Univariate composition head |f(z^m)| with a degree >= N tail."""

    m: int
    N: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.N < 1:
            raise ValueError(f"m, N must be >= 1, got m={self.m}, N={self.N}")

    def poly(self, r: float) -> float:
        return 2.0 * r ** self.N * (1.0 + r ** self.m) - (1.0 - r) * (1.0 - r ** self.m)


@dataclass(frozen=True)
class RmnN:
    """Polydisc composition head with the multiples-of-N majorant tail."""

    m: int
    n: int
    N: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1 or self.N < 1:
            raise ValueError(
                f"m, n, N must be >= 1, got m={self.m}, n={self.n}, N={self.N}")

    def poly(self, r: float) -> float:
        nr = self.n * r
        return 2.0 * nr ** self.N * (1.0 + r ** self.m) - (1.0 - nr) * (1.0 - r ** self.m)


@dataclass(frozen=True)
class AN:
    """Large-m limit family: 2 x^N = 1 - x in x = n r."""

    n: int
    N: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.N < 1:
            raise ValueError(f"n, N must be >= 1, got n={self.n}, N={self.N}")

    def poly(self, x: float) -> float:
        return 2.0 * x ** self.N + x - 1.0


@dataclass(frozen=True)
class ConvexT:
    """Univariate convex combination t |f(z)| + (1-t) majorant.

    Closed form (1 - 2 sqrt(1-t)) / (4t - 3) away from t = 3/4, where the
    removable value is 1/2.
    """

    t: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0,1], got {self.t}")

    def poly(self, r: float) -> float:
        return (4.0 * self.t - 3.0) * r * r - 2.0 * r + 1.0

    def closed_form(self) -> float:
        # Guard band around the removable singularity at t = 3/4 avoids the
        # 0/0 cancellation.
        if abs(self.t - 0.75) < 1e-10:
            return 0.5
        return (1.0 - 2.0 * math.sqrt(1.0 - self.t)) / (4.0 * self.t - 3.0)


@dataclass(frozen=True)
class ConvexMNT:
    """Polydisc convex combination with a composition head of order m; the
    radius is the minimum positive root of the degree m+1 polynomial in
    x = n r."""

    m: int
    n: int
    t: float

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise ValueError(f"m, n must be >= 1, got m={self.m}, n={self.n}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0,1], got {self.t}")

    def poly(self, x: float) -> float:
        t, scale = self.t, float(self.n ** (self.m - 1))
        return ((4.0 * t - 3.0) * x ** (self.m + 1)
                - (2.0 * t - 1.0) * x ** self.m
                + (2.0 * t - 3.0) * scale * x
                + scale)


@dataclass(frozen=True)
class EulerLambda:
    """Radial-derivative functional; quartic in x = n r on (0, sqrt(2)-1)."""

    n: int
    lam: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.lam <= 0.0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    def poly(self, x: float) -> float:
        if self.lam > 0.5:
            lam = self.lam
            return (((2.0 * lam * x + (4.0 * lam - 1.0)) * x
                     + (2.0 * lam - 1.0)) * x + 3.0) * x - 1.0
        return ((x + 1.0) * x * x + 3.0) * x - 1.0


@dataclass(frozen=True)
class AreaT:
    """Majorant plus image-area combination; cubic in x = n r for
    t < 9/17, constant 1/3 beyond."""

    n: int
    t: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if not 0.0 < self.t <= 1.0:
            raise ValueError(f"t must lie in (0,1], got {self.t}")

    def poly(self, x: float) -> float:
        t = self.t
        return ((t * x + t) * x + (4.0 - 5.0 * t)) * x - t


RadiusFamily = Union[Classical, RogosinskiUni, RmN, RmnN, AN, ConvexT,
                     ConvexMNT, EulerLambda, AreaT]


@dataclass(frozen=True)
class RadiusResult:
    family: RadiusFamily
    radius_r: float
    radius_x: float
    residual: float
    bracket: tuple[float, float]
    multiplicity_note: str = ""


def poly_eval(family: RadiusFamily, x: float) -> float:
    """The family's defining polynomial at x (in the family's solve
    variable; see the module docstring)."""
    return family.poly(x)


def family_dim(family: RadiusFamily) -> int:
    """The polydisc dimension the family's functional acts on."""
    return getattr(family, "n", 1)


def solve(family: RadiusFamily) -> RadiusResult:
    """The radius of the family: closed form where one exists, otherwise the
    unique (or minimum positive) root on the proof-supplied bracket."""
    if isinstance(family, Classical):
        r = 1.0 / (3.0 * family.n)
        return RadiusResult(family, r, family.n * r,
                            abs(family.poly(family.n * r)), (0.0, r),
                            "closed form")
    if isinstance(family, RogosinskiUni):
        root, lo, hi = bracketed_bisection(family.poly, 0.0, 1.0)
        return _result_r(family, root, lo, hi, n=1)
    if isinstance(family, RmN):
        root, lo, hi = bracketed_bisection(family.poly, 0.0, 1.0)
        return _result_r(family, root, lo, hi, n=1)
    if isinstance(family, RmnN):
        root, lo, hi = bracketed_bisection(family.poly, 0.0, 1.0 / family.n)
        return _result_r(family, root, lo, hi, n=family.n)
    if isinstance(family, AN):
        root, lo, hi = bracketed_bisection(family.poly, 0.0, 1.0)
        return _result_x(family, root, lo, hi, n=family.n)
    if isinstance(family, ConvexT):
        r = family.closed_form()
        if abs(family.t - 0.75) < 1e-10:
            # Inside the guard band the reported root is the removable value,
            # a root of the limiting quadratic -2r + 1.
            return RadiusResult(family, r, r, abs(-2.0 * r + 1.0), (0.0, r),
                                "closed form (guard band at t = 3/4)")
        return RadiusResult(family, r, r, abs(family.poly(r)), (0.0, r),
                            "closed form")
    if isinstance(family, ConvexMNT):
        root, lo, hi, note = min_positive_root(family.poly, 1.0)
        res = _result_x(family, root, lo, hi, n=family.n)
        return RadiusResult(res.family, res.radius_r, res.radius_x,
                            res.residual, res.bracket, note)
    if isinstance(family, EulerLambda):
        root, lo, hi = bracketed_bisection(family.poly, 0.0, SQRT2_MINUS_1)
        return _result_x(family, root, lo, hi, n=family.n)
    if isinstance(family, AreaT):
        if family.t >= 9.0 / 17.0:
            # Clamped branch: the radius is 1/3 by definition, not a root of
            # the cubic (which is nonnegative on (0, 1/3] here).
            x = 1.0 / 3.0
            return RadiusResult(family, x / family.n, x, 0.0,
                                (0.0, x), "closed form (clamped branch)")
        root, lo, hi = bracketed_bisection(family.poly, 0.0, 1.0 / 3.0)
        return _result_x(family, root, lo, hi, n=family.n)
    raise TypeError(f"unknown radius family {family!r}")


def _result_r(family: RadiusFamily, root: float, lo: float, hi: float,
              n: int) -> RadiusResult:
    return RadiusResult(family, root, n * root, abs(family.poly(root)), (lo, hi))


def _result_x(family: RadiusFamily, root: float, lo: float, hi: float,
              n: int) -> RadiusResult:
    return RadiusResult(family, root / n, root, abs(family.poly(root)), (lo, hi))


def limit_sweep_N(m: int, n: int, N_list: list[int]) -> list[RadiusResult]:
    """Roots of the composition family for ascending N; the sequence is
    strictly increasing toward 1 (n = 1) or toward x = n r -> 1 (n >= 2)."""
    if list(N_list) != sorted(N_list) or len(set(N_list)) != len(N_list):
        raise ValueError("N_list must be strictly ascending")
    return [solve(RmnN(m=m, n=n, N=N)) for N in N_list]


def limit_sweep_m(n: int, N: int, m_list: list[int]) -> list[RadiusResult]:
    """Roots of the composition family for ascending m; the sequence
    approaches the root of the large-m limit family AN(n, N)."""
    if list(m_list) != sorted(m_list) or len(set(m_list)) != len(m_list):
        raise ValueError("m_list must be strictly ascending")
    return [solve(RmnN(m=m, n=n, N=N)) for m in m_list]

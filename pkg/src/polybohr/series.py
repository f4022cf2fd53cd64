"""Truncated multivariate power series with certified geometric tails.

A function holomorphic near the origin of C^n is represented by its
coefficients a_alpha for multi-indices alpha with degree |alpha| <= K,
stored sparsely as a dict keyed by exponent tuples.  Absent keys are zero.
An optional :class:`TailBound` certifies that every discarded degree block
satisfies

    sum_{|alpha|=k} |a_alpha|  <=  C * k^weight * q^k      for all k > K,

which turns truncated majorant, radial-derivative and area sums into values
with rigorous remainder bounds.  All radii are equal polyradii: a single
scalar r with z ranging over the polycircle max_i |z_i| = r.

Everything here is a pure function of immutable inputs; concurrent use needs
no synchronisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .report import EvalReport

MultiIndex = tuple[int, ...]
Point = tuple[complex, ...]

# Degree cap for exact multinomial coefficients; far beyond any truncation
# used by the solvers and suites.
MULTINOMIAL_DEGREE_CAP = 60

# Hard cap on the number of multi-indices any one call may materialise.
ENUMERATION_CAP = 10_000_000

# Number of explicitly summed terms before the ratio-bounded remainder takes
# over in degree-weighted tail sums.
_EXPLICIT_TAIL_TERMS = 200


class CapacityError(ValueError):
    """Requested enumeration or degree exceeds the documented capacity."""


class DivergentTailError(ValueError):
    """The certified tail does not converge at the requested radius."""


def inf_norm(z: Point) -> float:
    """Max coordinate modulus, the polydisc norm of the point."""
    return max(abs(c) for c in z)


def degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def enumerate_multiindices(n: int, k: int) -> list[MultiIndex]:
    """All exponent tuples of dimension n and degree k, in colexicographic
    order (the last coordinate varies slowest).

    The count is C(k+n-1, n-1); a :class:`CapacityError` is raised before any
    list whose size would exceed the enumeration cap is built.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if k < 0:
        raise ValueError(f"degree must be >= 0, got {k}")
    count = math.comb(k + n - 1, n - 1)
    if count > ENUMERATION_CAP:
        raise CapacityError(
            f"C({k + n - 1},{n - 1}) = {count} multi-indices exceeds the "
            f"capacity cap {ENUMERATION_CAP}")
    return list(_colex(n, k))


def _colex(n: int, k: int) -> Iterator[MultiIndex]:
    if n == 1:
        yield (k,)
        return
    for last in range(k + 1):
        for head in _colex(n - 1, k - last):
            yield head + (last,)


def multinomial_coeff(alpha: MultiIndex) -> int:
    """|alpha|! / alpha!, the coefficient of z^alpha in (z_1+...+z_n)^|alpha|.

    Computed as a product of binomials over partial sums, which stays in
    integers at every step.  Degrees above the documented cap are rejected.
    """
    if any(a < 0 for a in alpha):
        raise ValueError(f"negative exponent in {alpha}")
    k = sum(alpha)
    if k > MULTINOMIAL_DEGREE_CAP:
        raise CapacityError(
            f"degree {k} exceeds the multinomial cap {MULTINOMIAL_DEGREE_CAP}")
    coeff = 1
    partial = 0
    for a in alpha:
        partial += a
        coeff *= math.comb(partial, a)
    return coeff


@dataclass(frozen=True)
class TailBound:
    """Certified bound sum_{|alpha|=k} |a_alpha| <= C * k^weight * q^k for all
    degrees k >= valid_from_degree.

    ``weight`` is 0 for plainly geometric families and is bumped by one each
    time the radial derivative multiplies blocks by their degree.
    """

    C: float
    q: float
    valid_from_degree: int
    weight: int = 0

    def __post_init__(self) -> None:
        if self.C < 0 or self.q < 0:
            raise ValueError(f"tail bound needs C, q >= 0, got {self}")
        if self.weight < 0:
            raise ValueError(f"negative tail weight {self.weight}")


def _weighted_geometric_sum(c: float, x: float, weight: int, start: int,
                            step: int = 1) -> float:
    """Upper bound for sum over k in {start, start+step, ...} of c * k^w * x^k.

    For weight 0 the geometric series is summed in closed form.  For positive
    weights the first terms are summed explicitly and the remainder is bounded
    by a geometric series in the (eventually decreasing) term ratio; this
    explicit summation is the normative tail treatment for degree-weighted
    blocks.
    """
    if c == 0.0 or x == 0.0:
        return 0.0
    if x >= 1.0:
        raise DivergentTailError(f"tail ratio {x} >= 1 at the requested radius")
    if start < 1:
        raise ValueError(f"tail start degree must be >= 1, got {start}")
    if weight == 0:
        return c * x ** start / (1.0 - x ** step)
    total = 0.0
    k = start
    for _ in range(_EXPLICIT_TAIL_TERMS):
        total += c * k ** weight * x ** k
        k += step
    # Beyond k the term ratio is at most ((k+step)/k)^w * x^step < 1 once the
    # explicit run is long enough; otherwise extend the run until it is.
    ratio = ((k + step) / k) ** weight * x ** step
    while ratio >= 1.0:
        total += c * k ** weight * x ** k
        k += step
        ratio = ((k + step) / k) ** weight * x ** step
        if k > start + 100_000 * step:
            raise DivergentTailError(
                f"degree-weighted tail does not contract at ratio {x}")
    first = c * k ** weight * x ** k
    return total + first / (1.0 - ratio)


@dataclass(frozen=True)
class TruncatedSeries:
    """Finitely supported coefficient map up to total degree ``max_degree``.

    ``closed_form``, when present, evaluates the underlying function exactly
    at a point; evaluation-type functionals prefer it over the truncated sum.
    """

    dim: int
    max_degree: int
    coeffs: dict[MultiIndex, complex]
    tail: Optional[TailBound] = None
    closed_form: Optional[Callable[[Point], complex]] = field(
        default=None, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.max_degree < 0:
            raise ValueError(f"max degree must be >= 0, got {self.max_degree}")
        for alpha in self.coeffs:
            if len(alpha) != self.dim:
                raise ValueError(
                    f"index {alpha} has dimension {len(alpha)}, expected {self.dim}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            if sum(alpha) > self.max_degree:
                raise ValueError(
                    f"index {alpha} exceeds max degree {self.max_degree}")

    def coefficient(self, alpha: MultiIndex) -> complex:
        return self.coeffs.get(alpha, 0.0 + 0.0j)

    def degrees(self) -> dict[int, list[MultiIndex]]:
        """Support grouped by degree, colexicographic within each degree."""
        by_degree: dict[int, list[MultiIndex]] = {}
        for alpha in self.coeffs:
            by_degree.setdefault(sum(alpha), []).append(alpha)
        for block in by_degree.values():
            block.sort(key=lambda a: tuple(reversed(a)))
        return by_degree

    def tail_sum(self, r: float, start: int | None = None, step: int = 1) -> float:
        """Bound for the discarded majorant mass sum_k block_k * r^k.

        The sum ranges over degrees beyond the truncation that are >= start
        (when given) and, for step > 1, lie in {step, 2*step, 3*step, ...}.
        """
        if self.tail is None:
            return 0.0
        first = max(self.max_degree + 1, self.tail.valid_from_degree)
        if start is not None:
            first = max(first, start)
        if step > 1:
            first = step * ((first + step - 1) // step)
        return _weighted_geometric_sum(
            self.tail.C, self.tail.q * r, self.tail.weight, first, step)


def zero_series(n: int, K: int = 0) -> TruncatedSeries:
    return TruncatedSeries(dim=n, max_degree=K, coeffs={})


def monomial_series(alpha: MultiIndex, coeff: complex = 1.0 + 0.0j) -> TruncatedSeries:
    return TruncatedSeries(dim=len(alpha), max_degree=sum(alpha),
                           coeffs={tuple(alpha): complex(coeff)})


def add_series(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum; only exact (tail-free) operands are combined."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch {f.dim} != {g.dim}")
    if f.tail is not None or g.tail is not None:
        raise ValueError("sum of series with certified tails is not supported")
    coeffs = dict(f.coeffs)
    for alpha, c in g.coeffs.items():
        coeffs[alpha] = coeffs.get(alpha, 0.0 + 0.0j) + c
    return TruncatedSeries(f.dim, max(f.max_degree, g.max_degree), coeffs)


def eval_series(f: TruncatedSeries, z: Point) -> complex:
    """sum_{|alpha| <= K} a_alpha z^alpha, accumulated degree by degree in
    ascending order and colexicographically within each degree."""
    if len(z) != f.dim:
        raise ValueError(f"point dimension {len(z)} != series dimension {f.dim}")
    total = 0.0 + 0.0j
    by_degree = f.degrees()
    for k in sorted(by_degree):
        for alpha in by_degree[k]:
            term = f.coeffs[alpha]
            for zi, ai in zip(z, alpha):
                if ai:
                    term *= zi ** ai
            total += term
    return total


def eval_series_with_tail(f: TruncatedSeries, z: Point) -> tuple[complex, float]:
    """Truncated value together with a bound on |f(z) - value|."""
    value = eval_series(f, z)
    return value, f.tail_sum(inf_norm(z))


def majorant_block_sums(f: TruncatedSeries) -> list[float]:
    """Entry k holds sum_{|alpha|=k} |a_alpha| for 0 <= k <= max_degree."""
    blocks = [0.0] * (f.max_degree + 1)
    for alpha, c in f.coeffs.items():
        blocks[sum(alpha)] += abs(c)
    return blocks


def squared_block_sums(f: TruncatedSeries) -> list[float]:
    """Entry k holds sum_{|alpha|=k} |a_alpha|^2."""
    blocks = [0.0] * (f.max_degree + 1)
    for alpha, c in f.coeffs.items():
        blocks[sum(alpha)] += abs(c) ** 2
    return blocks


def majorant_sum(f: TruncatedSeries, r: float, threshold: float = 1.0) -> EvalReport:
    """Majorant value sum_k block_k r^k with a certified remainder, reported
    against the threshold."""
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    blocks = majorant_block_sums(f)
    value = 0.0
    for k, b in enumerate(blocks):
        value += b * r ** k
    return EvalReport.build(value, f.tail_sum(r), threshold, detail="majorant")


def euler_derivative(f: TruncatedSeries) -> TruncatedSeries:
    """The radial derivative sum_k z_k d/dz_k: multiplies the degree-k part
    by k.  The tail weight of the result is raised by one; its mass is later
    bounded by explicit summation rather than a loosened geometric constant."""
    coeffs = {alpha: sum(alpha) * c for alpha, c in f.coeffs.items() if sum(alpha) >= 1}
    tail = None
    if f.tail is not None:
        tail = TailBound(f.tail.C, f.tail.q, f.tail.valid_from_degree,
                         f.tail.weight + 1)
    return TruncatedSeries(f.dim, f.max_degree, coeffs, tail)


def area_sum(f: TruncatedSeries, r: float, threshold: float = 1.0) -> EvalReport:
    """Normalised image-area sum: sum_k k (sum_{|alpha|=k} |a_alpha|^2) r^{2k}.

    The remainder uses blockwise l2 <= l1 domination: the squared block at
    degree k is at most (C k^w q^k)^2, so the discarded mass is bounded by a
    degree-weighted geometric sum in (q r)^2.
    """
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    sq = squared_block_sums(f)
    value = 0.0
    for k, b in enumerate(sq):
        if k >= 1:
            value += k * b * r ** (2 * k)
    tail = 0.0
    if f.tail is not None:
        start = max(f.max_degree + 1, f.tail.valid_from_degree)
        tail = _weighted_geometric_sum(
            f.tail.C ** 2, (f.tail.q * r) ** 2, 2 * f.tail.weight + 1, start)
    return EvalReport.build(value, tail, threshold, detail="area")

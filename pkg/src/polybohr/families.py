"""Constructors for concrete bounded functions on the unit polydisc.

Three kinds of inputs feed the functional and verification layers:

* the extremal Moebius family  f_a(z) = (a - s)/(1 - a s)  with s = z_1+...+z_n,
  whose majorant exceeds 1 just above each sharp radius as a -> 1-,
* products of Blaschke factors, one list per coordinate, which are bounded by
  one on the whole polydisc *by construction* and therefore serve as certified
  random test functions,
* componentwise Schwarz maps omega_i(w) = w^m B_i(w) vanishing to order >= m
  at the origin.

Randomness comes from a 64-bit linear congruential generator with fixed
constants so that seeded streams are byte-identical across platforms.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .series import (
    CapacityError,
    ENUMERATION_CAP,
    MultiIndex,
    Point,
    TailBound,
    TruncatedSeries,
    enumerate_multiindices,
    inf_norm,
    multinomial_coeff,
)

# Largest pole-parameter modulus the sampler draws; keeps q = (1+|w|)/2 of the
# certified tails at or below 0.875.
SAMPLE_POLE_MODULUS_CAP = 0.75


class Lcg64:
    """Deterministic 64-bit linear congruential generator.

    state_{k+1} = (a * state_k + c) mod 2^64 with Knuth's MMIX constants
    a = 6364136223846793005 and c = 1442695040888963407.  Uniform doubles use
    the top 53 bits.  Chosen over library generators so that seeded output is
    reproducible across platforms and library versions.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int) -> None:
        self.state = (seed ^ 0x9E3779B97F4A7C15) & self.MASK
        self.next_u64()  # decorrelate small seeds

    def next_u64(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        u = self.next_u64() >> 11  # 53 bits
        return lo + (hi - lo) * (u * (1.0 / (1 << 53)))

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        span = hi - lo + 1
        return lo + self.next_u64() % span


@dataclass(frozen=True)
class ExtremalSpec:
    """Parameters of the extremal family: a in [0, 1), dimension n >= 1."""

    a: float
    n: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.a < 1.0:
            raise ValueError(f"extremal parameter a must lie in [0,1), got {self.a}")
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")


def extremal_closed_eval(spec: ExtremalSpec, z: Point) -> complex:
    """(a - s)/(1 - a s) with s = z_1 + ... + z_n, the exact value."""
    if len(z) != spec.n:
        raise ValueError(f"point dimension {len(z)} != {spec.n}")
    s = sum(z)
    denom = 1.0 - spec.a * s
    if abs(denom) < 1e-14:
        raise ValueError(f"evaluation too close to the pole: |1 - a s| = {abs(denom)}")
    return (spec.a - s) / denom


def extremal_series(spec: ExtremalSpec, K: int) -> TruncatedSeries:
    """Expansion a - (1-a^2) sum_{k>=1} a^{k-1} (z_1+...+z_n)^k up to degree K.

    The coefficient at alpha with |alpha| = k >= 1 is
    -(1-a^2) a^{k-1} (k!/alpha!).  For a > 0 the degree blocks equal
    (1-a^2) a^{k-1} n^k, certified exactly by TailBound(C=(1-a^2)/a, q=a n);
    for a = 0 the series terminates at degree 1 and carries no tail.
    """
    if K < 0:
        raise ValueError(f"max degree must be >= 0, got {K}")
    a, n = spec.a, spec.n
    coeffs: dict[MultiIndex, complex] = {(0,) * n: complex(a)}
    if a == 0.0:
        for alpha in enumerate_multiindices(n, 1):
            coeffs[alpha] = -1.0 + 0.0j
        tail = None
        K = max(K, 1)
    else:
        _check_series_capacity(n, K)
        scale = -(1.0 - a * a)
        for k in range(1, K + 1):
            ak = scale * a ** (k - 1)
            for alpha in enumerate_multiindices(n, k):
                coeffs[alpha] = ak * multinomial_coeff(alpha)
        tail = TailBound(C=(1.0 - a * a) / a, q=a * n, valid_from_degree=K + 1)
    return TruncatedSeries(
        dim=n, max_degree=K, coeffs=coeffs, tail=tail,
        closed_form=lambda z, _s=spec: extremal_closed_eval(_s, z))


def _check_series_capacity(n: int, K: int) -> None:
    total = math.comb(K + n, n)
    if total > ENUMERATION_CAP:
        raise CapacityError(
            f"series support C({K + n},{n}) = {total} exceeds the capacity cap")


@dataclass(frozen=True)
class BlaschkeFactor:
    """A single disc automorphism factor B_w(z) = (w - z)/(1 - conj(w) z).

    |B_w| <= 1 on the closed unit disc whenever |w| < 1, with series
    B_w(z) = w - (1 - |w|^2) sum_{k>=1} conj(w)^{k-1} z^k.
    """

    w: complex

    def __post_init__(self) -> None:
        if abs(self.w) >= 1.0:
            raise ValueError(f"pole parameter must satisfy |w| < 1, got |w| = {abs(self.w)}")

    def eval(self, z: complex) -> complex:
        return (self.w - z) / (1.0 - self.w.conjugate() * z)

    def deriv(self, z: complex) -> complex:
        d = 1.0 - self.w.conjugate() * z
        return (abs(self.w) ** 2 - 1.0) / (d * d)

    def coefficients(self, K: int) -> list[complex]:
        out = [complex(self.w)]
        if K >= 1:
            s = -(1.0 - abs(self.w) ** 2)
            wc = self.w.conjugate()
            for k in range(1, K + 1):
                out.append(s * wc ** (k - 1))
        return out

    def majorant_at(self, t: float) -> float:
        """sum_k |coefficient_k| t^k in closed form, finite for |w| t < 1."""
        aw = abs(self.w)
        if aw * t >= 1.0:
            raise ValueError(f"majorant of a Blaschke factor diverges at t = {t}")
        return aw + (1.0 - aw * aw) * t / (1.0 - aw * t)


def _convolve_truncated(a: list[complex], b: list[complex], K: int) -> list[complex]:
    out = [0.0 + 0.0j] * (min(K, len(a) + len(b) - 2) + 1)
    for i, ai in enumerate(a):
        if i > K:
            break
        for j, bj in enumerate(b):
            if i + j > K:
                break
            out[i + j] += ai * bj
    return out


@dataclass(frozen=True)
class ProductFunctionSpec:
    """g(z) = e^{i phase} * prod_i prod_j B_{ij}(z_i), unit-bounded on the
    open polydisc by construction."""

    factors: tuple[tuple[BlaschkeFactor, ...], ...]
    phase: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.factors)

    def eval(self, z: Point) -> complex:
        if len(z) != self.dim:
            raise ValueError(f"point dimension {len(z)} != {self.dim}")
        value = cmath.exp(1j * self.phase)
        for zi, facs in zip(z, self.factors):
            for f in facs:
                value *= f.eval(zi)
        return value

    def coordinate_eval(self, i: int, z: complex) -> complex:
        value = 1.0 + 0.0j
        for f in self.factors[i]:
            value *= f.eval(z)
        return value

    def coordinate_deriv(self, i: int, z: complex) -> complex:
        """Product-rule derivative of the i-th coordinate factor."""
        facs = self.factors[i]
        total = 0.0 + 0.0j
        for j, fj in enumerate(facs):
            term = fj.deriv(z)
            for l, fl in enumerate(facs):
                if l != j:
                    term *= fl.eval(z)
            total += term
        return total

    def euler_eval(self, z: Point) -> complex:
        """Exact radial derivative sum_i z_i d/dz_i of the product at z."""
        if len(z) != self.dim:
            raise ValueError(f"point dimension {len(z)} != {self.dim}")
        phase = cmath.exp(1j * self.phase)
        coord_vals = [self.coordinate_eval(i, zi) for i, zi in enumerate(z)]
        total = 0.0 + 0.0j
        for i, zi in enumerate(z):
            term = zi * self.coordinate_deriv(i, zi)
            for l, v in enumerate(coord_vals):
                if l != i:
                    term *= v
            total += term
        return phase * total

    def coordinate_coefficients(self, i: int, K: int) -> list[complex]:
        coeffs = [1.0 + 0.0j]
        for f in self.factors[i]:
            coeffs = _convolve_truncated(coeffs, f.coefficients(K), K)
        return coeffs

    def series(self, K: int) -> TruncatedSeries:
        """Truncation to total degree K with a certified geometric tail.

        With q0 = (1 + max|w|)/2 strictly above every pole modulus, the
        Cauchy bound on the product of factor majorants at s = 1/q0 gives
        block_k <= C q0^k for every k, C = prod_{ij} M_{w_ij}(1/q0).
        """
        n = self.dim
        _check_series_capacity(n, K)
        all_w = [abs(f.w) for facs in self.factors for f in facs]
        per_coord = [self.coordinate_coefficients(i, K) for i in range(n)]
        phase = cmath.exp(1j * self.phase)
        coeffs: dict[MultiIndex, complex] = {}
        for k in range(K + 1):
            for alpha in enumerate_multiindices(n, k):
                c = phase
                for i, ai in enumerate(alpha):
                    ci = per_coord[i]
                    c *= ci[ai] if ai < len(ci) else 0.0
                if c != 0:
                    coeffs[alpha] = c
        if not all_w:
            tail = None  # a unimodular constant, exact
        else:
            q0 = (1.0 + max(all_w)) / 2.0
            s = 1.0 / q0
            C = 1.0
            for facs in self.factors:
                for f in facs:
                    C *= f.majorant_at(s)
            tail = TailBound(C=C, q=q0, valid_from_degree=K + 1)
        return TruncatedSeries(dim=n, max_degree=K, coeffs=coeffs, tail=tail,
                               closed_form=self.eval)


def sample_product_spec(seed: int, n: int, factors_per_coordinate: int) -> ProductFunctionSpec:
    """Deterministic draw of a product function: pole parameters have modulus
    uniform in [0, 0.75] and uniform argument; the global phase is uniform."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if factors_per_coordinate < 0:
        raise ValueError(f"factor count must be >= 0, got {factors_per_coordinate}")
    rng = Lcg64(seed)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    factors = []
    for _ in range(n):
        coord = []
        for _ in range(factors_per_coordinate):
            rho = rng.uniform(0.0, SAMPLE_POLE_MODULUS_CAP)
            theta = rng.uniform(0.0, 2.0 * math.pi)
            coord.append(BlaschkeFactor(rho * cmath.exp(1j * theta)))
        factors.append(tuple(coord))
    return ProductFunctionSpec(factors=tuple(factors), phase=phase)


def sample_bounded_function(seed: int, n: int, factors_per_coordinate: int,
                            K: int) -> TruncatedSeries:
    """Truncated series of a seeded certified-bounded product function.

    The draw depends only on the seed, so rebuilding with a larger K refines
    the same underlying function.
    """
    return sample_product_spec(seed, n, factors_per_coordinate).series(K)


@dataclass(frozen=True)
class SchwarzMapSpec:
    """Componentwise self-maps omega_i(w) = w^m B_i(w) of the unit disc,
    vanishing to order >= m at the origin (B_i a finite Blaschke product,
    possibly empty)."""

    n: int
    m: int
    tails: tuple[tuple[BlaschkeFactor, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.m < 1:
            raise ValueError(f"vanishing order must be >= 1, got {self.m}")
        if self.tails and len(self.tails) != self.n:
            raise ValueError(
                f"{len(self.tails)} tail factor lists for dimension {self.n}")

    def component(self, i: int, w: complex) -> complex:
        value = w ** self.m
        if self.tails:
            for f in self.tails[i]:
                value *= f.eval(w)
        return value


def schwarz_power_map(n: int, m: int) -> SchwarzMapSpec:
    """The power map omega(z) = (z_1^m, ..., z_n^m); m = 1 is the identity."""
    return SchwarzMapSpec(n=n, m=m)


def sample_schwarz_map(seed: int, n: int, m: int,
                       factors_per_coordinate: int = 1) -> SchwarzMapSpec:
    """Seeded Schwarz map with Blaschke tail factors on every coordinate."""
    base = sample_product_spec(seed, n, factors_per_coordinate)
    return SchwarzMapSpec(n=n, m=m, tails=base.factors)


def eval_schwarz(omega: SchwarzMapSpec, z: Point) -> Point:
    """Componentwise image; the output inf-norm is at most (inf-norm)^m."""
    if len(z) != omega.n:
        raise ValueError(f"point dimension {len(z)} != {omega.n}")
    if inf_norm(z) >= 1.0:
        raise ValueError("Schwarz maps are defined on the open unit polydisc")
    return tuple(omega.component(i, w) for i, w in enumerate(z))

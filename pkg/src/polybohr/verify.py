"""Property suites tying functionals, radii and coefficient bounds together.

Three suite kinds are provided:

* hold-below: at r = margin_below * radius, every sampled certified-bounded
  function must yield a conclusive HOLDS verdict (truncation degree is
  escalated while a verdict stays INCONCLUSIVE),
* sharpness-above: at r = radius + margin_above, some member of the extremal
  schedule a -> 1- must yield VIOLATED at the designated evaluation point,
* coefficient/derivative bound audits on seeded (function, point) pairs.

Designated evaluation points: the diagonal (r, ..., r) for the plain majorant
and area functionals, (-r, ..., -r) for the radial-derivative functional, and
the diagonal r * exp(i pi (2m-1)/m) for composition functionals of order m.

Sharpness of the composition family uses the from-degree-N tail: that is the
index set under which the extremal schedule's closed-form value exceeds one
just above the radius (the multiples-of-N value stays below one there), while
hold-below checks the multiples-of-N form that the inequality itself uses.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .families import (
    ExtremalSpec,
    Lcg64,
    extremal_series,
    sample_product_spec,
    schwarz_power_map,
)
from .functionals import (
    FromDegree,
    MultiplesOf,
    functional_A,
    functional_B,
    functional_C,
    functional_D,
    functional_E,
    functional_rogosinski_uni,
)
from .radii import (
    AN,
    AreaT,
    Classical,
    ConvexMNT,
    ConvexT,
    EulerLambda,
    RadiusFamily,
    RmN,
    RmnN,
    RogosinskiUni,
    family_dim,
    solve,
)
from .report import EvalReport, Verdict
from .series import (
    MULTINOMIAL_DEGREE_CAP,
    Point,
    TruncatedSeries,
    euler_derivative,
    eval_series,
)

THREADS_ENV_VAR = "POLYBOHR_THREADS"

# Extremal-family truncations stop at the exact-multinomial degree cap; the
# certified tails are far below every tolerance used here well before it.
EXTREMAL_K_CAP = MULTINOMIAL_DEGREE_CAP


def worker_count() -> int:
    """Parallelism cap from the environment; all cores when unset."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return os.cpu_count() or 1
    count = int(raw)
    if count < 1:
        raise ValueError(f"{THREADS_ENV_VAR} must be >= 1, got {raw}")
    return count


def parallel_map(fn: Callable, items: Sequence) -> list:
    """Order-preserving map across suite cases; results are merged by index,
    so output does not depend on scheduling."""
    workers = min(worker_count(), len(items)) if items else 1
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class SuiteConfig:
    family: RadiusFamily
    samples: int = 200
    margin_below: float = 0.99
    margin_above: float = 0.02
    a_schedule: tuple[float, ...] = (0.9, 0.99, 0.999)
    seed: int = 0
    factors_per_coordinate: int = 3
    k_start: int = 16
    k_cap: int = 512
    tail_tol: float = 1e-10

    def __post_init__(self) -> None:
        if not 0.0 < self.margin_below < 1.0:
            raise ValueError(f"margin_below must lie in (0,1), got {self.margin_below}")
        if self.margin_above <= 0.0:
            raise ValueError(f"margin_above must be positive, got {self.margin_above}")


@dataclass(frozen=True)
class CaseResult:
    index: int
    seed: int
    verdict: str
    value: float
    tail_bound: float
    k_used: int
    detail: str = ""


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    family_label: str
    radius_r: float
    eval_radius: float
    cases: tuple[CaseResult, ...]
    counts: dict[str, int]
    worst_slack: float
    failures: tuple[CaseResult, ...]
    witness_a: float | None = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return len(self.cases)


def _make_report(suite: str, family: RadiusFamily, radius_r: float,
                 eval_radius: float, cases: list[CaseResult],
                 failing: Callable[[CaseResult], bool],
                 witness_a: float | None = None, notes: str = "") -> SuiteReport:
    counts = {v.value: 0 for v in Verdict}
    for c in cases:
        counts[c.verdict] += 1
    slacks = [1.0 - (c.value + c.tail_bound) for c in cases]
    return SuiteReport(
        suite=suite,
        family_label=repr(family),
        radius_r=radius_r,
        eval_radius=eval_radius,
        cases=tuple(cases),
        counts=counts,
        worst_slack=min(slacks) if slacks else math.inf,
        failures=tuple(c for c in cases if failing(c)),
        witness_a=witness_a,
        notes=notes,
    )


def branch_diagonal(n: int, m: int, r: float) -> Point:
    """The designated composition point: every coordinate equals
    r * exp(i pi (2m-1)/m); m = 1 gives the real diagonal (-r, ..., -r)."""
    c = cmath.exp(1j * math.pi * (2 * m - 1) / m)
    if m == 1:
        c = -1.0 + 0.0j  # exact real value, no rounding in the phase
    return (c * r,) * n


def family_functional(family: RadiusFamily, f: TruncatedSeries, r: float,
                      sharpness: bool = False) -> EvalReport:
    """Evaluate the family's functional on f at equal polyradius r, at the
    family's designated evaluation point."""
    if isinstance(family, Classical):
        return functional_A(f, r)
    if isinstance(family, RogosinskiUni):
        return functional_rogosinski_uni(f, (-r + 0.0j,), family.N, family.p)
    if isinstance(family, (RmN, RmnN)):
        m = family.m
        n = family_dim(family)
        N = family.N
        z = branch_diagonal(n, m, r)
        omega = schwarz_power_map(n, m)
        if isinstance(family, RmN):
            mode: FromDegree | MultiplesOf = FromDegree(N)
        else:
            mode = FromDegree(N) if sharpness else MultiplesOf(N)
        return functional_B(f, omega, z, mode, p=1)
    if isinstance(family, ConvexT):
        omega = schwarz_power_map(1, 1)
        return functional_C(f, omega, (-r + 0.0j,), family.t)
    if isinstance(family, ConvexMNT):
        omega = schwarz_power_map(family.n, family.m)
        return functional_C(f, omega, branch_diagonal(family.n, family.m, r), family.t)
    if isinstance(family, EulerLambda):
        return functional_D(f, (-r + 0.0j,) * family.n, family.lam)
    if isinstance(family, AreaT):
        return functional_E(f, r, family.t)
    if isinstance(family, AN):
        raise ValueError("the large-m limit family has no functional of its own")
    raise TypeError(f"unknown radius family {family!r}")


def case_seed(base_seed: int, index: int) -> int:
    """Per-case seed derived from the suite seed; stable across runs."""
    rng = Lcg64(base_seed)
    rng.state = (rng.state + 0x632BE59BD9B4E019 * (index + 1)) & Lcg64.MASK
    return rng.next_u64()


def check_holds_below(config: SuiteConfig) -> SuiteReport:
    """Sampled certified-bounded functions must give HOLDS at
    r = margin_below * radius; INCONCLUSIVE verdicts trigger truncation
    escalation before they may count as failures."""
    solved = solve(config.family)
    r = config.margin_below * solved.radius_r
    n = family_dim(config.family)

    def run_case(i: int) -> CaseResult:
        seed_i = case_seed(config.seed, i)
        spec = sample_product_spec(seed_i, n, config.factors_per_coordinate)
        K = config.k_start
        while True:
            f = spec.series(K)
            rep = family_functional(config.family, f, r)
            if rep.verdict is not Verdict.INCONCLUSIVE or K >= config.k_cap:
                break
            if rep.tail_bound < config.tail_tol:
                break
            K *= 2
        return CaseResult(i, seed_i, rep.verdict.value, rep.value,
                          rep.tail_bound, K, rep.detail)

    cases = parallel_map(run_case, range(config.samples))
    return _make_report("holds-below", config.family, solved.radius_r, r,
                        list(cases), lambda c: c.verdict != Verdict.HOLDS.value)


def check_sharpness_above(config: SuiteConfig) -> SuiteReport:
    """Search the extremal schedule for a VIOLATED witness at
    r = radius + margin_above.  Absence of a witness is a failing report,
    never an exception."""
    solved = solve(config.family)
    r = solved.radius_r + config.margin_above
    n = family_dim(config.family)
    cases: list[CaseResult] = []
    witness: float | None = None
    k_cap = min(config.k_cap, EXTREMAL_K_CAP)
    for i, a in enumerate(config.a_schedule):
        spec = ExtremalSpec(a=a, n=n)
        K = min(config.k_start, k_cap)
        while True:
            f = extremal_series(spec, K)
            rep = family_functional(config.family, f, r, sharpness=True)
            if rep.verdict is not Verdict.INCONCLUSIVE or K >= k_cap:
                break
            if rep.tail_bound < config.tail_tol:
                break
            K = min(2 * K, k_cap)
        cases.append(CaseResult(i, 0, rep.verdict.value, rep.value,
                                rep.tail_bound, K, f"a={a!r} {rep.detail}"))
        if rep.verdict is Verdict.VIOLATED and witness is None:
            witness = a
    notes = "" if witness is not None else "no violating schedule member found"
    return _make_report("sharpness-above", config.family, solved.radius_r, r,
                        cases, lambda c: witness is None, witness, notes)


def _random_point(rng: Lcg64, n: int, r: float) -> Point:
    """Random point with inf-norm exactly r: one coordinate pinned to
    modulus r, the rest uniform in [0, r], all with uniform phases."""
    pinned = rng.randint(0, n - 1)
    coords = []
    for i in range(n):
        rho = r if i == pinned else rng.uniform(0.0, r)
        coords.append(rho * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))
    return tuple(coords)


@dataclass(frozen=True)
class AuditStats:
    pairs: int
    violations: int
    checks: dict[str, int] = field(default_factory=dict)
    worst_margin: float = math.inf

    @property
    def passed(self) -> bool:
        return self.violations == 0


# Absolute slack allowed on exact-arithmetic bounds; covers roundoff only.
_AUDIT_EPS = 1e-12


def audit_lemmas(samples: int, dims: Iterable[int], radii: Iterable[float],
                 seed: int = 0, factors_per_coordinate: int = 2,
                 points_per_radius: int = 3) -> AuditStats:
    """Audit four coefficient/growth bounds on seeded product functions.

    Per function: every coefficient satisfies |a_alpha| <= 1 - |a_0|^2.
    Per (function, point): the Schwarz-Pick growth bound
    (|f(0)| + r)/(1 + |f(0)| r), the vanishing-order bound |z^beta h(z)| <=
    r^{|beta|}, and the radial-derivative bound
    |Df(z)| <= n r (1 - |f(z)|^2)/(1 - (n r)^2) for n r <= sqrt(2) - 1.
    All evaluations are exact closed forms, so the slack is roundoff only.
    """
    rng = Lcg64(seed ^ 0x51AF9C3D)
    violations = 0
    pairs = 0
    checks = {"growth": 0, "coefficient": 0, "vanishing": 0, "radial": 0}
    worst = math.inf
    coeff_K = 12
    for n in dims:
        for s in range(samples):
            fn_seed = case_seed(seed, s * 101 + n)
            spec = sample_product_spec(fn_seed, n, factors_per_coordinate)
            series = spec.series(coeff_K)
            a0 = abs(series.coefficient((0,) * n))
            cap = 1.0 - a0 * a0
            for alpha, c in series.coeffs.items():
                if sum(alpha) == 0:
                    continue
                checks["coefficient"] += 1
                margin = cap + _AUDIT_EPS - abs(c)
                worst = min(worst, margin)
                if margin < 0:
                    violations += 1
            vanish_order = rng.randint(1, 3)
            vanish_coord = rng.randint(0, n - 1)
            for r in radii:
                if n * r > math.sqrt(2.0) - 1.0:
                    continue
                for _ in range(points_per_radius):
                    z = _random_point(rng, n, r)
                    pairs += 1
                    fz = spec.eval(z)
                    bound = (a0 + r) / (1.0 + a0 * r)
                    checks["growth"] += 1
                    margin = bound + _AUDIT_EPS - abs(fz)
                    worst = min(worst, margin)
                    if margin < 0:
                        violations += 1
                    # Monomial prefactor z_i^beta makes the vanishing order beta.
                    checks["vanishing"] += 1
                    gz = z[vanish_coord] ** vanish_order * fz
                    margin = r ** vanish_order + _AUDIT_EPS - abs(gz)
                    worst = min(worst, margin)
                    if margin < 0:
                        violations += 1
                    checks["radial"] += 1
                    dfz = spec.euler_eval(z)
                    nr = n * r
                    bound = nr * (1.0 - abs(fz) ** 2) / (1.0 - nr * nr)
                    margin = bound + _AUDIT_EPS - abs(dfz)
                    worst = min(worst, margin)
                    if margin < 0:
                        violations += 1
    return AuditStats(pairs=pairs, violations=violations, checks=checks,
                      worst_margin=worst)


@dataclass(frozen=True)
class ClosedFormCheck:
    a: float
    n: int
    r: float
    series_value: float
    closed_value: float
    rel_error: float
    k_used: int


def euler_closed_form_check(a_values: Iterable[float], n_values: Iterable[int],
                            r_values: Iterable[float], rel_tol: float = 1e-9,
                            k_start: int = 16, k_cap: int = 512) -> list[ClosedFormCheck]:
    """Series-computed |Df_a| at the diagonal (-r, ..., -r) against the exact
    value n r (1 - a^2) / (1 + a n r)^2, escalating K until the relative
    error target is met or the cap is reached."""
    out: list[ClosedFormCheck] = []
    cap = min(k_cap, EXTREMAL_K_CAP)
    for a in a_values:
        for n in n_values:
            for r in r_values:
                closed = n * r * (1.0 - a * a) / (1.0 + a * n * r) ** 2
                z = (-r + 0.0j,) * n
                K = min(k_start, cap)
                while True:
                    df = euler_derivative(extremal_series(ExtremalSpec(a, n), K))
                    got = abs(eval_series(df, z))
                    rel = abs(got - closed) / abs(closed) if closed else abs(got)
                    if rel <= rel_tol or K >= cap:
                        break
                    K = min(2 * K, cap)
                out.append(ClosedFormCheck(a, n, r, got, closed, rel, K))
    return out

"""Small-sample statistics: descriptives, Shapiro-Wilk, one-way ANOVA, Mann-Whitney U.

Everything here is self-contained: normal quantiles come from the standard
library, and the F-distribution tail is computed from the regularized
incomplete beta function via a continued fraction. The Shapiro-Wilk test
uses Royston's approximation for both the order-statistic weights and the
p-value transform, which is accurate for the 3..50 sample sizes accepted
here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, groupby
from statistics import NormalDist
from typing import Sequence


class StatsError(Exception):
    pass


class TooFewValuesError(StatsError):
    pass


class TooFewGroupsError(StatsError):
    pass


class ZeroVarianceError(StatsError):
    pass


class ZeroWithinVarianceError(StatsError):
    pass


class SampleSizeOutOfRangeError(StatsError):
    pass


class EmptySampleError(StatsError):
    pass


@dataclass(frozen=True)
class Sample:
    values: tuple[float, ...]
    label: str = ""

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TestResult:
    statistic: float
    df: tuple[int, int] | None
    p_value: float
    reject_at_05: bool


def _values(sample: Sample | Sequence[float]) -> list[float]:
    raw = list(sample.values if isinstance(sample, Sample) else sample)
    if any(not math.isfinite(v) for v in raw):
        raise ValueError("sample values must be finite")
    return raw


def mean_sd(sample: Sample | Sequence[float]) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (n-1 denominator)."""
    xs = _values(sample)
    n = len(xs)
    if n < 2:
        raise TooFewValuesError("need at least 2 values for mean and sd")
    m = sum(xs) / n
    var = sum((x - m) ** 2 for x in xs) / (n - 1)
    return m, math.sqrt(var)


# --- normal distribution helpers -------------------------------------------

_NORMAL = NormalDist()


def _norm_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _norm_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


# --- regularized incomplete beta (continued fraction) -----------------------

_CF_EPS = 1e-14
_CF_FPMIN = 1e-300
_CF_MAX_ITER = 500


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz iteration)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_FPMIN:
        d = _CF_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_FPMIN:
            d = _CF_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _CF_FPMIN:
            c = _CF_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) to ~1e-10 relative accuracy for a, b > 0 and x in [0, 1]."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def f_sf(f: float, df1: int, df2: int) -> float:
    """Upper tail of the F distribution with (df1, df2) degrees of freedom."""
    if f <= 0.0:
        return 1.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, x)


# --- Shapiro-Wilk -----------------------------------------------------------

# Royston's polynomial corrections for the two largest weights, in 1/sqrt(n).
_SW_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_SW_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
# p-value transform coefficients: polynomials in n (4 <= n <= 11)
_SW_MU_SMALL = (0.5440, -0.39978, 0.025054, -0.0006714)
_SW_LOGSIGMA_SMALL = (1.3822, -0.77857, 0.062767, -0.0020322)
# and in log(n) (n >= 12)
_SW_MU_LARGE = (-1.5861, -0.31082, -0.083751, 0.0038915)
_SW_LOGSIGMA_LARGE = (-0.4803, -0.082676, 0.0030302)
_SW_GAMMA = (-2.273, 0.459)


def _poly(coeffs: tuple[float, ...], x: float) -> float:
    total = 0.0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def shapiro_wilk_weights(n: int) -> list[float]:
    """Antisymmetric order-statistic weights for the W statistic."""
    if n == 3:
        s = math.sqrt(0.5)
        return [-s, 0.0, s]
    m = [_NORMAL.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, n + 1)]
    ssq = sum(v * v for v in m)
    rsn = 1.0 / math.sqrt(n)
    a_n = m[-1] / math.sqrt(ssq) + _poly(_SW_C1, rsn)
    a = [0.0] * n
    if n > 5:
        a_n1 = m[-2] / math.sqrt(ssq) + _poly(_SW_C2, rsn)
        phi = (ssq - 2.0 * m[-1] ** 2 - 2.0 * m[-2] ** 2) / (
            1.0 - 2.0 * a_n**2 - 2.0 * a_n1**2
        )
        a[-1], a[-2] = a_n, a_n1
        tail = 2
    else:
        phi = (ssq - 2.0 * m[-1] ** 2) / (1.0 - 2.0 * a_n**2)
        a[-1] = a_n
        tail = 1
    sqrt_phi = math.sqrt(phi)
    half = n // 2
    for k in range(n - half, n - tail):
        a[k] = m[k] / sqrt_phi
    for k in range(half):
        a[k] = -a[n - 1 - k]
    return a


def shapiro_wilk(sample: Sample | Sequence[float]) -> TestResult:
    """Shapiro-Wilk normality test (Royston approximation), for 3 <= n <= 50.

    The p-value is the upper tail of the transformed W statistic; small
    p-values reject normality.
    """
    xs = _values(sample)
    n = len(xs)
    if not 3 <= n <= 50:
        raise SampleSizeOutOfRangeError(f"sample size {n} outside 3..50")
    xs.sort()
    if xs[0] == xs[-1]:
        raise ZeroVarianceError("W is undefined for a constant sample")
    mean = sum(xs) / n
    sse = sum((x - mean) ** 2 for x in xs)

    weights = shapiro_wilk_weights(n)
    w = sum(wi * xi for wi, xi in zip(weights, xs)) ** 2 / sse
    w = min(w, 1.0)

    if n == 3:
        # Exact for n=3: W ranges over (0.75, 1], and the p-value is the
        # probability of a smaller W under normality.
        p = (6.0 / math.pi) * (math.asin(math.sqrt(w)) - math.asin(math.sqrt(0.75)))
        p = min(max(p, 0.0), 1.0)
    elif n <= 11:
        gamma = _poly(_SW_GAMMA, float(n))
        arg = gamma - math.log1p(-w)
        if arg <= 0.0:
            p = 0.0
        else:
            z = (-math.log(arg) - _poly(_SW_MU_SMALL, float(n))) / math.exp(
                _poly(_SW_LOGSIGMA_SMALL, float(n))
            )
            p = _norm_sf(z)
    else:
        ln_n = math.log(n)
        z = (math.log1p(-w) - _poly(_SW_MU_LARGE, ln_n)) / math.exp(
            _poly(_SW_LOGSIGMA_LARGE, ln_n)
        )
        p = _norm_sf(z)

    return TestResult(statistic=w, df=None, p_value=p, reject_at_05=p < 0.05)


# --- one-way ANOVA ----------------------------------------------------------

def anova_oneway(groups: Sequence[Sample | Sequence[float]]) -> TestResult:
    """One-way fixed-effects ANOVA across k groups.

    F is the ratio of between-group to within-group mean squares with
    degrees of freedom (k-1, N-k); the p-value is the F-distribution upper
    tail.
    """
    if len(groups) < 2:
        raise TooFewGroupsError("ANOVA needs at least two groups")
    data = [_values(g) for g in groups]
    for g in data:
        if len(g) < 2:
            raise TooFewValuesError("each ANOVA group needs at least 2 values")

    k = len(data)
    n_total = sum(len(g) for g in data)
    grand = sum(sum(g) for g in data) / n_total
    means = [sum(g) / len(g) for g in data]
    ss_between = sum(len(g) * (m - grand) ** 2 for g, m in zip(data, means))
    ss_within = sum(sum((x - m) ** 2 for x in g) for g, m in zip(data, means))
    if ss_within == 0.0:
        raise ZeroWithinVarianceError("all groups are internally constant")

    df = (k - 1, n_total - k)
    f = (ss_between / df[0]) / (ss_within / df[1])
    p = f_sf(f, df[0], df[1])
    return TestResult(statistic=f, df=df, p_value=p, reject_at_05=p < 0.05)


# --- Mann-Whitney U ---------------------------------------------------------

# Largest pooled size for which the p-value is computed by exhaustively
# enumerating all C(n, n_a) group assignments (C(16, 8) = 12870, still cheap).
EXACT_ENUMERATION_MAX = 16


def _midranks(pooled_sorted: list[float]) -> list[float]:
    ranks = [0.0] * len(pooled_sorted)
    i = 0
    rank = 1
    for _, group in groupby(pooled_sorted):
        size = len(list(group))
        mid = rank + (size - 1) / 2.0
        for j in range(size):
            ranks[i + j] = mid
        i += size
        rank += size
    return ranks


def _u_statistic(a: list[float], b: list[float]) -> float:
    """Pairs where a beats b, ties counted half."""
    u = 0.0
    for x in a:
        for y in b:
            if x > y:
                u += 1.0
            elif x == y:
                u += 0.5
    return u


def mann_whitney_u(
    a: Sample | Sequence[float], b: Sample | Sequence[float]
) -> TestResult:
    """Two-sided Mann-Whitney U test with midrank tie handling.

    Reports U = min(U_a, U_b). The p-value is exact (full enumeration of
    group assignments) when the pooled size is at most EXACT_ENUMERATION_MAX,
    which covers two groups of seven participants; larger samples use the
    normal approximation with tie correction and a continuity correction.
    """
    xs, ys = _values(a), _values(b)
    if not xs or not ys:
        raise EmptySampleError("both samples must be non-empty")
    n_a, n_b = len(xs), len(ys)
    u_a = _u_statistic(xs, ys)
    u_b = n_a * n_b - u_a
    u = min(u_a, u_b)

    n = n_a + n_b
    pooled = sorted(xs + ys)
    if n <= EXACT_ENUMERATION_MAX:
        ranks = _midranks(pooled)
        min_rank_sum = n_a * (n_a + 1) / 2.0
        hits = 0
        total = 0
        threshold = u + 1e-9
        for chosen in combinations(range(n), n_a):
            ua = sum(ranks[i] for i in chosen) - min_rank_sum
            if min(ua, n_a * n_b - ua) <= threshold:
                hits += 1
            total += 1
        p = hits / total
    else:
        mu = n_a * n_b / 2.0
        tie_term = 0.0
        for _, group in groupby(pooled):
            t = len(list(group))
            tie_term += t**3 - t
        sigma_sq = (n_a * n_b / 12.0) * ((n + 1) - tie_term / (n * (n - 1)))
        if sigma_sq <= 0.0:
            p = 1.0
        else:
            z = (u + 0.5 - mu) / math.sqrt(sigma_sq)
            p = min(1.0, 2.0 * _norm_cdf(z))

    return TestResult(statistic=u, df=None, p_value=p, reject_at_05=p < 0.05)

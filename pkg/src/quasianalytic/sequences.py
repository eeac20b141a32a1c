"""Weight sequences, Newton-polygon regularization and divergence criteria.

A weight sequence is a finite prefix (M_0..M_N) of a positive sequence with
M_0 = 1.  All arithmetic happens on natural logs so that factorial-scale
prefixes of length 10^4 and beyond remain representable in doubles.

The central operation is ``convex_regularize``: the largest log-convex
minorant of the sequence, computed as the lower convex hull (Newton polygon)
of the points (n, log M_n).  An independent quadratic-cost oracle,
``brute_force_regularize``, evaluates the chord-infimum formula directly and
is used to cross-check the hull.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SizeError, UnknownNameError

#: Relative tolerance for log-space comparisons (hull contact, convexity).
REL_TOL = 1e-12

_BRUTE_FORCE_CAP = 200


@dataclass(frozen=True)
class WeightSequence:
    """Finite prefix (M_0..M_N), M_0 = 1, stored as natural logs."""

    log_values: tuple[float, ...]
    label: str | None = None

    def __post_init__(self) -> None:
        if len(self.log_values) < 2:
            raise SizeError("a weight sequence needs at least two entries")
        for i, lv in enumerate(self.log_values):
            if not math.isfinite(lv):
                raise DomainError(
                    f"entry {i} must be strictly positive and finite"
                )
        if abs(self.log_values[0]) > REL_TOL:
            raise DomainError("M_0 must equal 1")

    @classmethod
    def from_values(cls, values, label: str | None = None) -> "WeightSequence":
        logs = []
        for i, v in enumerate(values):
            v = float(v)
            if not (v > 0.0 and math.isfinite(v)):
                raise DomainError(
                    f"entry {i} must be strictly positive and finite"
                )
            logs.append(math.log(v))
        return cls(tuple(logs), label)

    @classmethod
    def from_logs(cls, log_values, label: str | None = None) -> "WeightSequence":
        return cls(tuple(float(v) for v in log_values), label)

    @property
    def values(self) -> list[float]:
        """Entries as plain floats.  May overflow to inf for huge prefixes."""
        return [math.exp(lv) for lv in self.log_values]

    @property
    def last_index(self) -> int:
        return len(self.log_values) - 1

    def __len__(self) -> int:
        return len(self.log_values)


@dataclass(frozen=True)
class RegularizedSequence:
    """Log-convex minorant M^c plus the principal (contact) index set."""

    log_regularized: tuple[float, ...]
    principal: tuple[int, ...]
    source: WeightSequence

    @property
    def regularized(self) -> list[float]:
        return [math.exp(lv) for lv in self.log_regularized]

    @property
    def last_index(self) -> int:
        return len(self.log_regularized) - 1

    def __len__(self) -> int:
        return len(self.log_regularized)

    def ratio(self, n: int) -> float:
        """M^c_n / M^c_{n-1} for 1 <= n <= N."""
        return math.exp(self.log_regularized[n] - self.log_regularized[n - 1])

    def root(self, n: int) -> float:
        """(M^c_n)^{1/n} for n >= 1."""
        return math.exp(self.log_regularized[n] / n)


class Verdict(enum.Enum):
    QUASI_ANALYTIC = "QuasiAnalytic"
    NOT_QUASI_ANALYTIC = "NotQuasiAnalytic"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ClassifierPolicy:
    """Knobs for the (necessarily heuristic) divergence classification.

    Divergence of a series is undecidable from a finite prefix; the policy
    makes the decision rule explicit.  ``horizon`` caps the number of terms
    inspected, ``eps_div`` is the minimal mass a doubling window must add for
    the trace to look divergent, ``eps_conv`` is the geometric-extrapolation
    tail mass below which convergence is called outright.
    """

    horizon: int = 10_000
    eps_div: float = 1e-3
    eps_conv: float = 1e-9
    windows: int = 3


@dataclass(frozen=True)
class CriterionTraces:
    """Partial sums of the three equivalent divergence criteria.

    ``s1[m-1]`` = sum_{n=1..m} 1/beta_n, ``s2`` uses 1/(M^c_n)^{1/n},
    ``s3`` uses M^c_{n-1}/M^c_n.
    """

    s1: tuple[float, ...]
    s2: tuple[float, ...]
    s3: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.s1)


@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: Verdict
    traces: CriterionTraces
    trivial_liminf_flag: bool
    window_increments: tuple[float, ...]
    tail_estimate: float | None

    def __post_init__(self) -> None:
        if self.verdict is not Verdict.INCONCLUSIVE and len(self.traces) == 0:
            raise DomainError("a decisive verdict needs a supporting trace")


def convex_regularize(M: WeightSequence) -> RegularizedSequence:
    """Largest log-convex minorant of M via a monotone-chain lower hull.

    Hull vertices are strict (collinear interior points are interpolated, not
    vertices), but the principal set contains every index where the minorant
    touches M within REL_TOL, so collinear contact points are kept.
    """
    logs = M.log_values
    n_pts = len(logs)
    # Monotone chain over (n, log M_n); abscissae are already sorted.
    hull: list[int] = []
    for i in range(n_pts):
        while len(hull) >= 2:
            i0, i1 = hull[-2], hull[-1]
            cross = (i1 - i0) * (logs[i] - logs[i0]) - (i - i0) * (
                logs[i1] - logs[i0]
            )
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(i)

    reg = [0.0] * n_pts
    for a, b in zip(hull, hull[1:]):
        la, lb = logs[a], logs[b]
        for j in range(a, b + 1):
            reg[j] = la + (lb - la) * (j - a) / (b - a)
    reg[hull[0]] = logs[hull[0]]
    if len(hull) == 1:  # cannot happen for n_pts >= 2, kept for safety
        reg = list(logs)

    principal = tuple(
        j
        for j in range(n_pts)
        if abs(reg[j] - logs[j]) <= REL_TOL * max(1.0, abs(logs[j]))
    )
    return RegularizedSequence(tuple(reg), principal, M)


def brute_force_regularize(M: WeightSequence) -> RegularizedSequence:
    """Chord-infimum oracle for the regularization.

    Evaluates, for every n, the infimum over k >= 0, 0 <= l <= n of
    (k log M_{n-l} + l log M_{n+k}) / (k + l), with n + k clamped to the
    prefix end and the degenerate pair (k, l) = (0, 0) excluded (its chord
    value is undefined).  Quadratic per index; capped at N <= 200.
    """
    N = M.last_index
    if N > _BRUTE_FORCE_CAP:
        raise SizeError(f"brute-force oracle capped at N <= {_BRUTE_FORCE_CAP}")
    logs = np.asarray(M.log_values)
    reg = np.empty(N + 1)
    reg[0] = logs[0]
    for n in range(1, N + 1):
        ks = np.arange(0, N - n + 1)
        ls = np.arange(0, n + 1)
        left = logs[n - ls]          # indexed by l
        right = logs[n + ks]         # indexed by k
        num = ks[:, None] * left[None, :] + ls[None, :] * right[:, None]
        den = ks[:, None] + ls[None, :]
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = num / den
        vals[den == 0] = np.inf
        reg[n] = vals.min()

    principal = tuple(
        j
        for j in range(N + 1)
        if abs(reg[j] - logs[j]) <= REL_TOL * max(1.0, abs(logs[j]))
    )
    return RegularizedSequence(tuple(float(v) for v in reg), principal, M)


def beta_sequence(M: WeightSequence) -> list[float]:
    """beta_n = min_{n <= k <= N} M_k^{1/k} for n = 1..N (prefix semantics).

    On the finite prefix the infimum over k >= n is restricted to k <= N, so
    values near the right edge are prefix-relative upper approximations.
    """
    logs = M.log_values
    N = M.last_index
    log_roots = [logs[k] / k for k in range(1, N + 1)]
    suffix_min = [0.0] * N
    running = math.inf
    for i in range(N - 1, -1, -1):
        running = min(running, log_roots[i])
        suffix_min[i] = running
    return [math.exp(v) for v in suffix_min]


def criterion_partial_sums(
    R: RegularizedSequence, M: WeightSequence, up_to: int
) -> CriterionTraces:
    """Partial-sum traces of the three equivalent divergence criteria."""
    if up_to > M.last_index or up_to > R.last_index:
        raise SizeError("up_to exceeds the available prefix")
    beta = beta_sequence(M)
    lr = R.log_regularized
    t1 = t2 = t3 = 0.0
    s1, s2, s3 = [], [], []
    for n in range(1, up_to + 1):
        t1 += 1.0 / beta[n - 1]
        t2 += math.exp(-lr[n] / n)
        t3 += math.exp(lr[n - 1] - lr[n])
        s1.append(t1)
        s2.append(t2)
        s3.append(t3)
    return CriterionTraces(tuple(s1), tuple(s2), tuple(s3))


def carleman_inequality_check(a) -> tuple[float, float, bool]:
    """sum of running geometric means vs e times the plain sum.

    Returns (lhs, rhs, holds); holds is true for every valid input.
    """
    a = [float(x) for x in a]
    if len(a) < 1:
        raise SizeError("need at least one term")
    for i, x in enumerate(a):
        if not (x > 0.0 and math.isfinite(x)):
            raise DomainError(f"term {i} must be strictly positive and finite")
    log_cum = 0.0
    lhs = 0.0
    for n, x in enumerate(a, start=1):
        log_cum += math.log(x)
        lhs += math.exp(log_cum / n)
    rhs = math.e * sum(a)
    return lhs, rhs, lhs <= rhs


def classify(
    M: WeightSequence, policy: ClassifierPolicy | None = None
) -> ClassificationVerdict:
    """Heuristic quasi-analyticity verdict from the S3 trace.

    QuasiAnalytic when every doubling window of the S3 trace up to the
    horizon adds at least ``eps_div`` (or the finite-liminf pre-check fires);
    NotQuasiAnalytic when the last window is below ``eps_div`` with window
    mass shrinking toward the horizon, or the geometric tail extrapolation
    falls below ``eps_conv``; Inconclusive otherwise.
    """
    policy = policy or ClassifierPolicy()
    N = min(M.last_index, policy.horizon)
    R = convex_regularize(M)
    traces = criterion_partial_sums(R, M, N)
    s3 = traces.s3

    # Finite-liminf pre-check: if the running min of M_n^{1/n} over the
    # second half of the prefix does not exceed the min over the second
    # quarter, the roots look bounded and the class is trivially
    # quasi-analytic.
    logs = M.log_values
    log_roots = [logs[n] / n for n in range(1, N + 1)]
    trivial = False
    if N >= 8:
        first = min(log_roots[N // 4 : N // 2])
        second = min(log_roots[N // 2 :])
        trivial = second <= first + math.log(1.01)

    increments: list[float] = []
    if N >= 2 ** (policy.windows + 1):
        for i in range(policy.windows):
            hi = N // (2**i)
            lo = N // (2 ** (i + 1))
            increments.append(s3[hi - 1] - s3[lo - 1])

    lr = R.log_regularized
    tail: float | None = None
    if N >= 3:
        a_last = math.exp(lr[N - 1] - lr[N])
        a_prev = math.exp(lr[N - 2] - lr[N - 1])
        if a_prev > 0.0:
            rho = a_last / a_prev
            if rho < 1.0:
                tail = a_last * rho / (1.0 - rho)

    if trivial or (increments and all(d >= policy.eps_div for d in increments)):
        verdict = Verdict.QUASI_ANALYTIC
    elif tail is not None and tail < policy.eps_conv:
        verdict = Verdict.NOT_QUASI_ANALYTIC
    elif (
        len(increments) == policy.windows
        and increments[0] < policy.eps_div
        and all(a <= b for a, b in zip(increments, increments[1:]))
    ):
        # Window mass shrinks toward the horizon: Cauchy-flat trace.
        verdict = Verdict.NOT_QUASI_ANALYTIC
    else:
        verdict = Verdict.INCONCLUSIVE

    return ClassificationVerdict(
        verdict=verdict,
        traces=traces,
        trivial_liminf_flag=trivial,
        window_increments=tuple(increments),
        tail_estimate=tail,
    )


CANONICAL_NAMES = (
    "factorial",
    "n_pow_n",
    "denjoy_loglinear",
    "denjoy_loglog",
    "factorial_squared",
    "constant",
)


def canonical_sequence(name: str, N: int) -> WeightSequence:
    """Named catalog prefixes of length N + 1, built directly in log space.

    Where the defining formula is undefined or <= 1 for small n (log n <= 0
    or log log n <= 0) entries are padded with max(1, previous entry).
    """
    if N < 1:
        raise SizeError("need N >= 1")

    def pad(prev_log: float) -> float:
        return max(0.0, prev_log)

    logs = [0.0]
    for n in range(1, N + 1):
        if name == "factorial":
            logs.append(math.lgamma(n + 1))
        elif name == "factorial_squared":
            logs.append(2.0 * math.lgamma(n + 1))
        elif name == "n_pow_n":
            logs.append(n * math.log(n) if n >= 1 else 0.0)
        elif name == "denjoy_loglinear":
            if n >= 2:
                logs.append(n * math.log(n * math.log(n)))
            else:
                logs.append(pad(logs[-1]))
        elif name == "denjoy_loglog":
            if n >= 3:
                logs.append(n * math.log(n * math.log(n) * math.log(math.log(n))))
            else:
                logs.append(pad(logs[-1]))
        elif name == "constant":
            logs.append(0.0)
        else:
            raise UnknownNameError(f"unknown canonical sequence {name!r}")
    return WeightSequence.from_logs(logs, label=name)


def is_log_convex(log_values, tol: float = REL_TOL) -> bool:
    """Check M_k^2 <= M_{k-1} M_{k+1} on logs with relative slack."""
    lv = list(log_values)
    for k in range(1, len(lv) - 1):
        slack = tol * max(1.0, abs(lv[k]))
        if 2.0 * lv[k] > lv[k - 1] + lv[k + 1] + slack:
            return False
    return True

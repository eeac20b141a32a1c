"""Sequence-space norm and metric used in Bang's uniqueness argument.

The norm of a truncated real sequence X with admissible index set P is

    ||X|| = min over k in P of max(e^{-k}, max_{0<=n<=k} |x_n|).

The candidate at k is the max of a decreasing exponential and a
non-decreasing running maximum, so the minimum is attained at a small index
(never past the first k with e^{-k} < |x_0| when x_0 != 0).  A truncation
flag marks results where the exponential side of the last candidate won, in
which case the true (infinite-tail) value is only bounded above by the
reported one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PreconditionError
from .sequences import RegularizedSequence
from .smooth_functions import DerivativeOracle


@dataclass(frozen=True)
class BangVector:
    """Truncated real sequence (x_0..x_K) with admissible index set P."""

    entries: tuple[float, ...]
    index_set: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise DomainError("entries must be non-empty")
        if not self.index_set:
            raise DomainError("index set must be non-empty")
        if list(self.index_set) != sorted(set(self.index_set)):
            raise DomainError("index set must be strictly increasing")
        if self.index_set[0] != 0:
            raise DomainError("index set must contain 0")
        if self.index_set[-1] >= len(self.entries):
            raise DomainError("index set exceeds entry range")

    @classmethod
    def of(cls, entries, index_set=None) -> "BangVector":
        entries = tuple(float(x) for x in entries)
        if index_set is None:
            index_set = tuple(range(len(entries)))
        return cls(entries, tuple(int(k) for k in index_set))


@dataclass(frozen=True)
class NormCertificate:
    value: float
    achieving_index: int
    truncated: bool = False


def bang_norm(X: BangVector) -> NormCertificate:
    """Exact minimum over the candidate set, smallest achieving index.

    ``truncated`` is set when the winning candidate is the exponential term
    at the largest admissible index: the reported value is then an upper
    bound for the untruncated norm (the all-zero vector is the extreme case,
    reported as e^{-K}).
    """
    best_val = math.inf
    best_k = -1
    best_exp_side = False
    runmax = 0.0
    pos = 0
    for k in X.index_set:
        while pos <= k:
            runmax = max(runmax, abs(X.entries[pos]))
            pos += 1
        e_term = math.exp(-k)
        cand = max(e_term, runmax)
        if cand < best_val:
            best_val = cand
            best_k = k
            best_exp_side = e_term >= runmax
    truncated = best_exp_side and best_k == X.index_set[-1]
    return NormCertificate(best_val, best_k, truncated)


def bang_distance(X: BangVector, Y: BangVector) -> float:
    """d(X, Y) = ||X - Y|| for vectors sharing shape and index set."""
    if len(X.entries) != len(Y.entries) or X.index_set != Y.index_set:
        raise DomainError("vectors must share length and index set")
    diff = BangVector(
        tuple(a - b for a, b in zip(X.entries, Y.entries)), X.index_set
    )
    return bang_norm(diff).value


def smallest_exceeding_index(X: BangVector) -> int | None:
    """Smallest k in P with e^{-k} < |x_0|, or None when x_0 = 0.

    The achieving index of the norm never exceeds this cap.
    """
    x0 = abs(X.entries[0])
    if x0 == 0.0:
        return None
    for k in X.index_set:
        if math.exp(-k) < x0:
            return k
    return None


def bracket_achieving_index(X: BangVector, k1: int, k2: int) -> int:
    """Achieving index within [k2, k1] given e^{-k1} <= ||X|| <= e^{-k2}."""
    if k1 not in X.index_set or k2 not in X.index_set:
        raise PreconditionError("bracket endpoints must belong to the index set")
    cert = bang_norm(X)
    v = cert.value
    tol = 1e-12 * max(1.0, v)
    if not (math.exp(-k1) <= v + tol and v <= math.exp(-k2) + tol):
        raise PreconditionError("norm does not satisfy the stated bracket")
    runmax = 0.0
    pos = 0
    for k in X.index_set:
        while pos <= k:
            runmax = max(runmax, abs(X.entries[pos]))
            pos += 1
        if k2 <= k <= k1:
            cand = max(math.exp(-k), runmax)
            if abs(cand - v) <= tol:
                return k
    raise PreconditionError("no achieving index inside the bracket")


def xf_vector(
    f: DerivativeOracle,
    t: float,
    Mc: RegularizedSequence,
    K: int,
) -> BangVector:
    """Normalized derivative vector x_n = f^(n)(t) / (M^c_n e^n), n = 0..K.

    The admissible index set is the principal set of the regularization
    (indices where the minorant touches the original sequence) clipped to
    0..K, with 0 adjoined.  Entries are assembled in log space so that
    factorial-scale weights cannot overflow the quotient.
    """
    if Mc.last_index < K:
        raise DomainError("regularized sequence shorter than the order cap")
    lr = Mc.log_regularized
    entries = []
    for n in range(K + 1):
        fn = f.deriv(n, t)
        if fn == 0.0:
            entries.append(0.0)
        else:
            log_mag = math.log(abs(fn)) - lr[n] - n
            entries.append(math.copysign(math.exp(log_mag), fn))
    index_set = sorted({0} | {p for p in Mc.principal if p <= K})
    return BangVector(tuple(entries), tuple(index_set))


def propagation_bound_check(
    f: DerivativeOracle,
    Mc: RegularizedSequence,
    t: float,
    tau: float,
    K: int,
) -> tuple[float, float, bool]:
    """Check ||X_f(t+tau)|| <= ||X_f(t)|| exp(e |tau| M^c_l / M^c_{l-1}).

    l is the achieving index of the norm at t.  When l = 0 the ratio is
    undefined; the smallest positive admissible index is substituted, which
    only enlarges the right-hand side for log-convex weights.
    """
    at_t = bang_norm(xf_vector(f, t, Mc, K))
    if at_t.value == 0.0 or at_t.truncated:
        # A truncated certificate only bounds the true norm from above, so
        # the achieving index (and with it the bound) is not trustworthy.
        raise PreconditionError(
            "norm at t is zero or truncation-dominated; the bound is inapplicable"
        )
    l = at_t.achieving_index
    if l == 0:
        positive = [p for p in Mc.principal if 0 < p <= K]
        l = positive[0] if positive else 1
    lr = Mc.log_regularized
    ratio = math.exp(lr[l] - lr[l - 1])
    rhs = at_t.value * math.exp(math.e * abs(tau) * ratio)
    lhs = bang_norm(xf_vector(f, t + tau, Mc, K)).value
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-9)

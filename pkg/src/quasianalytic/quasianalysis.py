"""Majorant functions of normalized derivative data and their estimates.

For f with |f^(j)| <= M_j (M log-convex, M_0 = 1) the majorants

    B_{f,n}(t) = max over n <= j <= J of |f^(j)(t)| / (e^j M_j)

are bounded by e^{-n}, decrease in n, and are insensitive to vanishing
derivatives (B_{f,n} = B_{f,n+1} wherever f^(n) = 0).  The translation
estimate bounds B_{f,n}(t + tau) through the weight ratio M_q / M_{q-1}.
All of these are checked empirically on grids; nothing here is a prover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, OrderError, PreconditionError
from .sequences import WeightSequence, is_log_convex
from .smooth_functions import DerivativeOracle


@dataclass(frozen=True)
class MajorantValue:
    value: float
    achieving_order: int
    truncated: bool


def majorant(
    f: DerivativeOracle,
    M: WeightSequence,
    n: int,
    t: float,
    J: int = 40,
) -> MajorantValue:
    """B_{f,n}(t) truncated at order J, computed in log space.

    ``truncated`` marks a maximum attained at j = J, where a longer tail
    could still raise the value.
    """
    if not is_log_convex(M.log_values):
        raise DomainError("weight sequence must be log-convex")
    if n > J:
        raise OrderError("need n <= J")
    if J > M.last_index:
        raise OrderError("J exceeds the weight prefix")
    logs = M.log_values
    best = -math.inf
    best_j = n
    for j in range(n, J + 1):
        fj = f.deriv(j, t)
        if fj == 0.0:
            continue
        lm = math.log(abs(fj)) - j - logs[j]
        if lm > best:
            best = lm
            best_j = j
    if best == -math.inf:
        return MajorantValue(0.0, n, False)
    return MajorantValue(math.exp(best), best_j, best_j == J)


@dataclass(frozen=True)
class MajorantProfile:
    """Sampled majorant values over a (t, n) grid."""

    f: DerivativeOracle
    M: WeightSequence
    J: int
    orders: tuple[int, ...]
    grid: tuple[float, ...]
    samples: dict  # (n, t) -> B_{f,n}(t)


def build_profile(
    f: DerivativeOracle,
    M: WeightSequence,
    orders,
    grid_size: int,
    J: int = 40,
) -> MajorantProfile:
    a, b = f.interval
    grid = tuple(float(t) for t in np.linspace(a, b, grid_size))
    orders = tuple(int(n) for n in orders)
    samples = {
        (n, t): majorant(f, M, n, t, J).value for n in orders for t in grid
    }
    return MajorantProfile(f, M, J, orders, grid, samples)


@dataclass(frozen=True)
class MajorantReport:
    bound_violations: tuple  # (n, t, B) with B > e^{-n}
    monotonicity_violations: tuple  # (n, t, B_n, B_{n+1})
    zero_transfer_violations: tuple  # (n, t, B_n, B_{n+1}) at f^(n)(t) ~ 0

    @property
    def ok(self) -> bool:
        return not (
            self.bound_violations
            or self.monotonicity_violations
            or self.zero_transfer_violations
        )


def majorant_properties_check(profile: MajorantProfile) -> MajorantReport:
    """Verify the three majorant properties on the sampled profile.

    Precondition: the membership bound |f^(j)(t)| <= M_j must hold on the
    grid for all j <= J; offenders abort the check, since the properties are
    only claimed under membership.
    """
    f, M, J = profile.f, profile.M, profile.J
    logs = M.log_values
    offenders = []
    for t in profile.grid:
        for j in range(J + 1):
            fj = abs(f.deriv(j, t))
            if fj > math.exp(logs[j]) * (1.0 + 1e-9):
                offenders.append((j, t, fj))
    if offenders:
        j, t, fj = offenders[0]
        raise PreconditionError(
            f"membership |f^({j})({t})| = {fj} exceeds M_{j}"
            f" ({len(offenders)} offenders total)"
        )

    bound, mono, zero = [], [], []
    for n in profile.orders:
        for t in profile.grid:
            Bn = profile.samples[(n, t)]
            if Bn > math.exp(-n) * (1.0 + 1e-9):
                bound.append((n, t, Bn))
            if (n + 1, t) in profile.samples:
                Bn1 = profile.samples[(n + 1, t)]
                if Bn1 > Bn * (1.0 + 1e-9) + 1e-300:
                    mono.append((n, t, Bn, Bn1))
                scale = math.exp(logs[n] + n)
                if abs(f.deriv(n, t)) <= 1e-12 * scale:
                    if abs(Bn - Bn1) > 1e-12 * max(1.0, Bn):
                        zero.append((n, t, Bn, Bn1))
    return MajorantReport(tuple(bound), tuple(mono), tuple(zero))


def lemma_estimate_check(
    f: DerivativeOracle,
    M: WeightSequence,
    n: int,
    q: int,
    t: float,
    tau: float,
    J: int = 40,
) -> tuple[float, float, bool]:
    """Translation estimate for the majorant:

    B_{f,n}(t + tau) <= max(B_{f,n}(t), e^{-q}) exp(e |tau| M_q / M_{q-1}),
    for any q > n.
    """
    if q <= n:
        raise OrderError("need q > n")
    if q > M.last_index:
        raise OrderError("q exceeds the weight prefix")
    lhs = majorant(f, M, n, t + tau, J).value
    base = max(majorant(f, M, n, t, J).value, math.exp(-q))
    ratio = math.exp(M.log_values[q] - M.log_values[q - 1])
    rhs = base * math.exp(math.e * abs(tau) * ratio)
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-9)


@dataclass(frozen=True)
class MonotonicityCertificate:
    """Grid sweep of derivative positivity up to a maximal order.

    The certificate is a falsifier: AllPositive only says no grid point
    disproved positivity, while a violation pinpoints (order, t).
    """

    grid_size: int
    max_order: int
    verdict: str  # "AllPositive" or "ViolationAt"
    violation: tuple[int, float] | None

    @property
    def all_positive(self) -> bool:
        return self.verdict == "AllPositive"


def monotonicity_certificate(
    f: DerivativeOracle, n_max: int, grid_size: int = 1000
) -> MonotonicityCertificate:
    a, b = f.interval
    for n in range(n_max + 1):
        for t in np.linspace(a, b, grid_size):
            if not f.deriv(n, float(t)) > 0.0:
                return MonotonicityCertificate(
                    grid_size, n_max, "ViolationAt", (n, float(t))
                )
    return MonotonicityCertificate(grid_size, n_max, "AllPositive", None)


@dataclass(frozen=True)
class BorelWitnessReport:
    radius_estimate: float
    witness: bool
    message: str


def borel_image_witness(
    coeffs, interval_length: float = 1.0
) -> BorelWitnessReport:
    """Root-test radius of a positive power series, plus the obstruction note.

    When the estimated radius of convergence is smaller than the interval
    length, no function with all derivatives positive at the left endpoint
    and the stated growth bounds can have this series as its jet there; the
    report records that conclusion.  This is a demonstration artifact, not a
    proof engine: the radius comes from the trailing-window root test.
    """
    coeffs = [float(c) for c in coeffs]
    if len(coeffs) < 2:
        raise DomainError("need at least two coefficients")
    for i, c in enumerate(coeffs):
        if not (c > 0.0 and math.isfinite(c)):
            raise DomainError(f"coefficient {i} must be strictly positive")
    n_terms = len(coeffs) - 1
    log_roots = [math.log(coeffs[n]) / n for n in range(1, n_terms + 1)]
    window = log_roots[len(log_roots) // 2 :]
    log_limsup = max(window)
    radius = math.exp(-log_limsup)
    # When the trailing roots are still decaying, the estimate is only a
    # growing lower bound of the radius (entire-series shape); refuse to
    # call an obstruction from it.
    still_growing = window[-1] < window[0] - 1e-12
    witness = radius < interval_length and not still_growing
    if witness:
        message = (
            f"estimated radius {radius:.6g} < interval length "
            f"{interval_length:.6g}: the series cannot be the jet of a class "
            "member with all derivatives positive at the left endpoint"
        )
    else:
        message = (
            f"estimated radius {radius:.6g} >= interval length "
            f"{interval_length:.6g}: no obstruction from this diagnostic"
        )
    return BorelWitnessReport(radius, witness, message)

"""Catalog of smooth functions with exact n-th derivatives on an interval.

Each oracle is an immutable description (name + parameters + interval) whose
``deriv(n, x)`` returns f^(n)(x) in closed form for any order.  These are the
test substrate for every module that consumes derivative data; sup norms are
grid maxima and therefore lower bounds of the true suprema.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, SizeError, UnknownNameError

ORACLE_NAMES = (
    "exp_scaled",
    "sin",
    "cos",
    "rational_pole",
    "polynomial",
    "flat",
    "zero",
)


@dataclass(frozen=True)
class DerivativeOracle:
    """Deterministic closed-form derivative evaluator on [a, b]."""

    name: str
    params: tuple[tuple[str, object], ...]
    interval: tuple[float, float]

    def param(self, key: str, default=None):
        for k, v in self.params:
            if k == key:
                return v
        return default

    @property
    def amplitude(self) -> float:
        return float(self.param("amplitude", 1.0))

    def _check_x(self, x: float) -> float:
        a, b = self.interval
        if not (a - 1e-12 <= x <= b + 1e-12):
            raise DomainError(f"x = {x} outside interval [{a}, {b}]")
        return float(x)

    def deriv(self, n: int, x: float) -> float:
        """f^(n)(x); n = 0 evaluates the function itself."""
        x = self._check_x(x)
        if n < 0:
            raise DomainError("derivative order must be >= 0")
        A = self.amplitude
        if self.name == "zero":
            return 0.0
        if self.name == "exp_scaled":
            c = float(self.param("c", 1.0))
            return A * c**n * math.exp(c * x)
        if self.name == "sin":
            return A * _circular(n, x, sine=True)
        if self.name == "cos":
            return A * _circular(n, x, sine=False)
        if self.name == "rational_pole":
            s = float(self.param("scale", 1.0))
            base = 1.0 + s * x
            # (-1)^n n! s^n (1 + s x)^{-n-1}, assembled in log space so high
            # orders do not overflow through the factorial.
            sign = (-1.0) ** n * math.copysign(1.0, s) ** n * math.copysign(1.0, A)
            if s == 0.0:
                return A if n == 0 else 0.0
            if n <= 60:
                return A * (-1.0) ** n * math.factorial(n) * s**n / base ** (n + 1)
            log_mag = (
                math.lgamma(n + 1)
                + n * math.log(abs(s))
                - (n + 1) * math.log(base)
                + math.log(abs(A))
            )
            if log_mag > 700.0:
                raise DomainError("derivative magnitude overflows a double")
            return sign * math.exp(log_mag)
        if self.name == "polynomial":
            coeffs = self.param("coeffs")
            return A * _poly_deriv(tuple(float(c) for c in coeffs), n, x)
        if self.name == "flat":
            return A * _flat_deriv(n, x)
        raise UnknownNameError(f"unknown oracle {self.name!r}")

    def __call__(self, x: float) -> float:
        return self.deriv(0, x)


def _circular(n: int, x: float, sine: bool) -> float:
    k = n % 4 if sine else (n + 1) % 4
    if k == 0:
        return math.sin(x)
    if k == 1:
        return math.cos(x)
    if k == 2:
        return -math.sin(x)
    return -math.cos(x)


def _poly_deriv(coeffs: tuple[float, ...], n: int, x: float) -> float:
    if n >= len(coeffs):
        return 0.0
    # d^n/dx^n sum c_i x^i = sum_{i>=n} c_i i!/(i-n)! x^{i-n}, by Horner.
    shifted = [
        coeffs[i] * math.prod(range(i - n + 1, i + 1))
        for i in range(n, len(coeffs))
    ]
    acc = 0.0
    for c in reversed(shifted):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def flat_poly(n: int) -> tuple[Fraction, ...]:
    """Exact coefficients of p_n in f^(n)(x) = p_n(1/x) e^{-1/x}.

    p_0 = 1 and p_{n+1}(u) = u^2 (p_n(u) - p_n'(u)); degree of p_n is 2n.
    """
    if n == 0:
        return (Fraction(1),)
    p = flat_poly(n - 1)
    diff = list(p)
    for i in range(len(p) - 1):
        diff[i] -= p[i + 1] * (i + 1)
    return (Fraction(0), Fraction(0)) + tuple(diff)


def _flat_deriv(n: int, x: float) -> float:
    if x < 0.0:
        raise DomainError("flat oracle is defined for x >= 0 only")
    if x == 0.0:
        return 0.0
    u = 1.0 / x
    if u > 1400.0:
        # p_n(u) e^{-u} underflows far below double range; see
        # flat_log_magnitude for the log-space account.
        return 0.0
    acc = 0.0
    for c in reversed(flat_poly(n)):
        acc = acc * u + float(c)
    return acc * math.exp(-u)


def flat_log_magnitude(n: int, u: float) -> float:
    """log |p_n(u) e^{-u}| evaluated stably for large u.

    For large u the polynomial is dominated by its leading term, so the
    log-magnitude is computed from log |p_n(u)| - u with the polynomial
    evaluated in scaled form.
    """
    coeffs = flat_poly(n)
    # Evaluate p_n(u) via its largest-magnitude monomial as the scale.
    logs = [
        (math.log(abs(c)) + i * math.log(u), 1.0 if c > 0 else -1.0)
        for i, c in enumerate(coeffs)
        if c != 0
    ]
    top = max(lm for lm, _ in logs)
    acc = sum(s * math.exp(lm - top) for lm, s in logs)
    if acc == 0.0:
        return -math.inf
    return top + math.log(abs(acc)) - u


def make_oracle(
    name: str, params: dict | None = None, interval=(0.0, 1.0)
) -> DerivativeOracle:
    """Build a catalog oracle, validating interval constraints."""
    params = dict(params or {})
    a, b = float(interval[0]), float(interval[1])
    if not (a < b):
        raise DomainError("interval must satisfy a < b")
    if name not in ORACLE_NAMES:
        raise UnknownNameError(f"unknown oracle {name!r}")
    if name == "rational_pole":
        s = float(params.get("scale", 1.0))
        if s != 0.0:
            pole = -1.0 / s
            if a <= pole <= b:
                raise DomainError(f"pole at {pole} lies inside [{a}, {b}]")
    if name == "flat" and a < 0.0:
        raise DomainError("flat oracle requires a >= 0")
    if name == "polynomial" and "coeffs" not in params:
        raise DomainError("polynomial oracle needs a 'coeffs' parameter")
    frozen = tuple(
        (k, tuple(v) if isinstance(v, list) else v) for k, v in sorted(params.items())
    )
    return DerivativeOracle(name=name, params=frozen, interval=(a, b))


@dataclass(frozen=True)
class SupNormEstimate:
    """Grid lower bound of M_n(f) = sup |f^(n)| over the interval."""

    order: int
    grid_size: int
    estimate: float
    refined: bool = False


def sup_norms(
    f: DerivativeOracle,
    max_order: int,
    grid_size: int,
    refine: bool = False,
) -> list[SupNormEstimate]:
    """Grid maxima of |f^(n)| for n = 0..max_order, endpoints included.

    With ``refine`` the grid is doubled (up to three times) until the
    estimate moves by less than 1e-6 relatively; the flag records whether
    that stopping point was reached.
    """
    if grid_size < 2:
        raise SizeError("grid size must be >= 2")
    a, b = f.interval
    out = []
    for n in range(max_order + 1):
        size = grid_size
        est = max(abs(f.deriv(n, x)) for x in np.linspace(a, b, size))
        converged = False
        if refine:
            for _ in range(3):
                size *= 2
                new = max(abs(f.deriv(n, x)) for x in np.linspace(a, b, size))
                if new - est <= 1e-6 * max(1.0, est):
                    est = max(est, new)
                    converged = True
                    break
                est = new
        out.append(SupNormEstimate(n, size, est, refined=converged))
    return out


@dataclass(frozen=True)
class PringsheimDiagnostic:
    """Root-growth diagnostic: ratios M_n^{1/n}/n and their window minima."""

    ratios: tuple[float, ...]
    window_minima: tuple[float, ...]


def pringsheim_ratio(
    f: DerivativeOracle, max_order: int, grid_size: int, window: int = 3
) -> PringsheimDiagnostic:
    """Empirical analyticity diagnostic: boundedness of M_n^{1/n}/n.

    Also reports the liminf-style sliding-window minima that matter for the
    weaker criterion (bounded liminf instead of bounded limsup).
    """
    if max_order < 2:
        raise SizeError("need max_order >= 2")
    norms = sup_norms(f, max_order, grid_size)
    ratios = []
    for n in range(1, max_order + 1):
        m = norms[n].estimate
        ratios.append(0.0 if m == 0.0 else m ** (1.0 / n) / n)
    minima = tuple(
        min(ratios[i : i + window]) for i in range(len(ratios) - window + 1)
    )
    return PringsheimDiagnostic(tuple(ratios), minima)


@dataclass(frozen=True)
class MembershipFit:
    """Least-squares fit of log M_{n_k} - log n_k! = n_k log A + log B."""

    A: float
    B: float
    residuals: tuple[float, ...]
    membership: bool


def class_membership_fit(
    f: DerivativeOracle,
    subseq,
    max_order: int,
    grid_size: int,
    slack: float = 1.0,
) -> MembershipFit:
    """Fit the factorial-growth bound M_{n_k} <= B A^{n_k} n_k! in log space.

    Membership holds when every residual is below ``slack`` (log units); the
    constants absorb bounded sloppiness, the slope is the decisive quantity.
    The default slack of one log unit tolerates the concave bow a least
    squares line leaves on factorially-dominated data while still flagging
    the convex endpoint deviations of super-geometric growth.
    """
    subseq = [int(n) for n in subseq]
    if len(subseq) < 2:
        raise SizeError("need at least two orders to fit")
    if any(n < 1 or n > max_order for n in subseq):
        raise DomainError("subsequence must lie within 1..max_order")
    norms = sup_norms(f, max_order, grid_size)
    ys, ns = [], []
    for n in subseq:
        m = norms[n].estimate
        if m == 0.0:
            continue
        ys.append(math.log(m) - math.lgamma(n + 1))
        ns.append(float(n))
    if not ys:
        # Identically vanishing derivatives: any constants work.
        return MembershipFit(1.0, 1.0, (), True)
    if len(ys) == 1:
        slope, intercept = 0.0, ys[0]
    else:
        slope, intercept = np.polyfit(ns, ys, 1)
    residuals = tuple(y - (slope * n + intercept) for y, n in zip(ys, ns))
    return MembershipFit(
        A=math.exp(slope),
        B=math.exp(intercept),
        residuals=residuals,
        membership=all(r <= slack for r in residuals),
    )

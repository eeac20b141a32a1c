"""Interpolation polynomials with derivative data at shifted nodes.

Q(x, x_0..x_{n-1}) is the degree-n polynomial whose m-th derivative vanishes
at x_m for m = 0..n-1 and whose n-th derivative is identically 1.  It is
built by n antidifferentiations of the unit function, fixing each constant
at the corresponding node:

    Q(x, x_0..x_{n-1}) = integral from x_0 to x of Q(t, x_1..x_{n-1}) dt.

Coefficients are exact rationals (floats convert exactly, being dyadic), so
the boundary conditions can be checked as identities; floats enter only at
evaluation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DomainError, OrderError, SizeError
from .smooth_functions import DerivativeOracle


def _to_fraction(x) -> Fraction:
    if isinstance(x, Rational):
        return Fraction(x)
    return Fraction(float(x))


@dataclass(frozen=True)
class NodeList:
    """Expansion nodes (x_0..x_{n-1}) inside a stated interval [a, b]."""

    nodes: tuple[Fraction, ...]
    interval: tuple[float, float]

    def __post_init__(self) -> None:
        a, b = self.interval
        if not a <= b:
            raise DomainError("interval must satisfy a <= b")
        for x in self.nodes:
            if not (a - 1e-12 <= float(x) <= b + 1e-12):
                raise DomainError(f"node {float(x)} outside [{a}, {b}]")

    @classmethod
    def of(cls, nodes, interval=None) -> "NodeList":
        fr = tuple(_to_fraction(x) for x in nodes)
        if interval is None:
            floats = [float(x) for x in fr] or [0.0]
            interval = (min(floats), max(floats))
        return cls(fr, (float(interval[0]), float(interval[1])))

    @property
    def monotone(self) -> bool:
        """Strictly decreasing nodes, as required by the sandwich bound."""
        return all(a > b for a, b in zip(self.nodes, self.nodes[1:]))

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class GontcharoffPolynomial:
    """Exact monomial coefficients (ascending) plus the generating nodes."""

    coefficients: tuple[Fraction, ...]
    nodes: NodeList

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate_exact(self, x) -> Fraction:
        x = _to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluate(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + float(c)
        return acc

    def derivative_coefficients(self, m: int) -> tuple[Fraction, ...]:
        coeffs = self.coefficients
        for _ in range(m):
            coeffs = tuple(coeffs[i] * i for i in range(1, len(coeffs)))
            if not coeffs:
                coeffs = (Fraction(0),)
        return coeffs

    def coefficient_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]


def _antidifferentiate(coeffs: tuple[Fraction, ...], node: Fraction):
    prim = (Fraction(0),) + tuple(
        c / (i + 1) for i, c in enumerate(coeffs)
    )
    acc = Fraction(0)
    for c in reversed(prim):
        acc = acc * node + c
    return (prim[0] - acc,) + prim[1:]


def gontcharoff_poly(nodes: NodeList) -> GontcharoffPolynomial:
    """Build Q by folding the integral recursion from the last node inward.

    Zero nodes yield the constant polynomial 1.
    """
    coeffs: tuple[Fraction, ...] = (Fraction(1),)
    for node in reversed(nodes.nodes):
        coeffs = _antidifferentiate(coeffs, node)
    return GontcharoffPolynomial(coeffs, nodes)


def derivative_shift(Q: GontcharoffPolynomial, m: int) -> GontcharoffPolynomial:
    """The m-th derivative of Q is the polynomial on the truncated nodes.

    Returns Q(x, x_m..x_{n-1}); differentiating the coefficients gives the
    identical polynomial, which the test suite checks as a coefficient
    identity.
    """
    if m < 0 or m > Q.degree:
        raise OrderError(f"order {m} out of range 0..{Q.degree}")
    truncated = NodeList(Q.nodes.nodes[m:], Q.nodes.interval)
    return gontcharoff_poly(truncated)


def sandwich_check(
    Q: GontcharoffPolynomial,
    x: float,
    next_node: float | None = None,
) -> tuple[float, float, float, bool]:
    """(x - x_0)^n / n! <= Q(x) <= (x - x_last)^n / n! for x > x_0.

    Requires strictly decreasing nodes.  The upper endpoint uses the node
    that would follow the generating list; with only n nodes available it
    defaults to x_{n-1}, a weaker but still valid choice.  Equal-node lists
    degenerate to the classical Taylor weight and are checked with equality
    tolerance.
    """
    nodes = Q.nodes.nodes
    n = len(nodes)
    if n == 0:
        raise SizeError("need at least one node")
    equal_nodes = all(a == b for a, b in zip(nodes, nodes[1:]))
    if not Q.nodes.monotone and not equal_nodes:
        raise DomainError("nodes must be strictly decreasing (or all equal)")
    x0 = float(nodes[0])
    if not equal_nodes and not x > x0:
        raise DomainError("need x > x_0")
    xl = float(nodes[-1]) if next_node is None else float(next_node)
    fact = math.factorial(n)
    lower = (x - x0) ** n / fact
    upper = (x - xl) ** n / fact
    value = Q.evaluate(x)
    slack = 1e-12 * max(1.0, abs(value), abs(lower), abs(upper))
    holds = lower <= value + slack and value <= upper + slack
    return lower, value, upper, holds


@dataclass(frozen=True)
class ExpansionResult:
    """Terms, remainder and mean-value bracket of the generalized expansion."""

    value: float
    terms: tuple[float, ...]
    remainder: float
    bracket: tuple[float, float]


def generalized_taylor(
    f: DerivativeOracle,
    nodes: NodeList,
    m: int,
    x: float,
    bracket_grid: int = 101,
) -> ExpansionResult:
    """Expansion of f(x) from derivative data f^(k)(x_k), k = 0..m.

    The k-th term is f^(k)(x_k) Q(x, x_0..x_{k-1}); the remainder is
    f(x) minus the partial sum, and by the mean-value form it equals
    f^(m+1)(xi) Q(x, x_0..x_m) for some xi in the hull of {x} and the nodes.
    The bracket is the range of that product over a sampling grid of the
    hull (endpoints included).
    """
    if len(nodes) < m + 1:
        raise SizeError(f"need at least {m + 1} nodes for order {m}")
    a, b = f.interval
    if not (a - 1e-12 <= x <= b + 1e-12):
        raise DomainError("x outside the oracle's interval")

    value = f.deriv(0, x)
    terms = []
    for k in range(m + 1):
        prefix = NodeList(nodes.nodes[:k], nodes.interval)
        qk = gontcharoff_poly(prefix).evaluate(x)
        terms.append(f.deriv(k, float(nodes.nodes[k])) * qk)
    remainder = value - math.fsum(terms)

    tail_q = gontcharoff_poly(
        NodeList(nodes.nodes[: m + 1], nodes.interval)
    ).evaluate(x)
    pts = [float(v) for v in nodes.nodes[: m + 1]] + [x]
    lo, hi = min(pts), max(pts)
    grid = np.linspace(lo, hi, bracket_grid)
    prods = [f.deriv(m + 1, float(t)) * tail_q for t in grid]
    bracket = (min(prods), max(prods))
    return ExpansionResult(value, tuple(terms), remainder, bracket)


def zero_propagation_bound(
    B: float,
    A: float,
    q: int,
    m_s: int,
    x: float,
    x_q: float,
    R_q: float,
) -> float:
    """Derivative bound B A^{q+1} ((m_s+q+1)!/m_s!) (A(|x-x_q|+R_q))^{m_s}.

    Assembled in log space so factorial ratios beyond order 170 do not
    overflow.  When A(|x-x_q|+R_q) < 1 the bound contracts to 0 as m_s
    grows; that condition is the caller's to arrange, not enforced here.
    """
    if not (A > 0.0 and B > 0.0):
        raise DomainError("A and B must be positive")
    if q < 0 or m_s < 0:
        raise DomainError("orders must be non-negative")
    dist = abs(x - x_q) + R_q
    contraction = A * dist
    if contraction == 0.0:
        if m_s > 0:
            return 0.0
        log_factor = 0.0
    else:
        log_factor = m_s * math.log(contraction)
    log_bound = (
        math.log(B)
        + (q + 1) * math.log(A)
        + math.lgamma(m_s + q + 2)
        - math.lgamma(m_s + 1)
        + log_factor
    )
    if log_bound > 700.0:
        return math.inf
    return math.exp(log_bound)

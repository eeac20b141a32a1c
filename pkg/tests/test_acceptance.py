"""End-to-end acceptance suite.

Each test covers one acceptance criterion and prints a single PASS/FAIL line
so the whole gate can be read off the captured output (`pytest -s` or the -rP
report).  Criteria are property- and oracle-based; tolerances are stated
inline.
"""

import math
import random
import time
from fractions import Fraction

import pytest
import sympy

from quasianalytic import (
    BangVector,
    NodeList,
    WeightSequence,
    bang_distance,
    bang_norm,
    beta_sequence,
    bracket_achieving_index,
    brute_force_regularize,
    canonical_sequence,
    carleman_inequality_check,
    classify,
    convex_regularize,
    criterion_partial_sums,
    generalized_taylor,
    gontcharoff_poly,
    is_log_convex,
    lemma_estimate_check,
    majorant_properties_check,
    build_profile,
    make_oracle,
    monotonicity_certificate,
    sandwich_check,
    smallest_exceeding_index,
)

REL = 1e-12


def report(label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {label}{suffix}")
    assert ok, f"{label}{suffix}"


def random_corpus(seed=0xACCE97, count=1000, max_len=50, log_range=5.0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_len)
        logs = [0.0] + [rng.uniform(-log_range, log_range) for _ in range(n)]
        out.append(WeightSequence.from_logs(logs))
    return out


CORPUS = random_corpus()


class TestAcceptance:
    def test_01_regularization_vs_brute_force(self):
        start = time.perf_counter()
        worst = 0.0
        ok = True
        for M in CORPUS:
            fast = convex_regularize(M)
            slow = brute_force_regularize(M)
            for a, b in zip(fast.log_regularized, slow.log_regularized):
                err = abs(math.exp(a) - math.exp(b)) / max(
                    math.exp(b), 1e-300
                )
                worst = max(worst, err)
                ok &= err <= REL
            logs = fast.log_regularized
            # invariants: minorant, log-convex, contact at principal
            # indices, affine between principal indices
            ok &= all(
                r <= m + REL * max(1.0, abs(m))
                for r, m in zip(logs, M.log_values)
            )
            ok &= is_log_convex(logs)
            ok &= all(
                abs(logs[p] - M.log_values[p]) <= REL * max(1.0, abs(logs[p]))
                for p in fast.principal
            )
            for lo, hi in zip(fast.principal, fast.principal[1:]):
                for n in range(lo + 1, hi):
                    lam = (n - lo) / (hi - lo)
                    interp = (1 - lam) * logs[lo] + lam * logs[hi]
                    ok &= abs(logs[n] - interp) <= 1e-9 * max(1.0, abs(interp))
        elapsed = time.perf_counter() - start
        ok &= elapsed < 10.0
        report(
            "1 regularization: hull = brute force on 1000 sequences",
            ok,
            f"max rel err {worst:.2e}, {elapsed:.2f}s",
        )

    def test_02_inequality_chain(self):
        ok = True
        for M in CORPUS:
            R = convex_regularize(M)
            beta = beta_sequence(M)
            for n in range(1, len(M)):
                ok &= R.root(n) <= beta[n - 1] * (1 + 1e-12)
            traces = criterion_partial_sums(R, M, M.last_index)
            for s2, s3 in zip(traces.s2, traces.s3):
                ok &= s2 <= math.e * s3 * (1 + 1e-12)
        report("2 chain: roots below beta, S2 <= e*S3 at every m", ok)

    def test_03_carleman_inequality(self):
        rng = random.Random(0xCA51E)
        ok = True
        for _ in range(1000):
            n = rng.randint(1, 100)
            a = [math.exp(rng.uniform(-5, 5)) for _ in range(n)]
            lhs, rhs, holds = carleman_inequality_check(a)
            ok &= holds
        report("3 Carleman inequality on 1000 random positive vectors", ok)

    def test_04_classifier_goldens(self):
        horizon = 10_000
        expected = {
            "factorial": "QuasiAnalytic",
            "denjoy_loglinear": "QuasiAnalytic",
            "factorial_squared": "NotQuasiAnalytic",
        }
        ok = True
        details = []
        for name, want in expected.items():
            M = canonical_sequence(name, horizon)
            start = time.perf_counter()
            verdict = classify(M)
            elapsed = time.perf_counter() - start
            ok &= verdict.verdict.value == want and elapsed < 1.0
            details.append(f"{name}:{verdict.verdict.value}@{elapsed:.2f}s")
        report("4 classifier golden verdicts at horizon 10^4", ok,
               ", ".join(details))

    def test_05_bang_norm(self):
        rng = random.Random(0xBA46)
        ok = True

        def exhaustive(X):
            return min(
                max(math.exp(-k), max(abs(x) for x in X.entries[: k + 1]))
                for k in X.index_set
            )

        for _ in range(1000):
            n = rng.randint(1, 15)
            X = BangVector.of([rng.uniform(-3, 3) for _ in range(n)])
            Y = BangVector.of([rng.uniform(-3, 3) for _ in range(n)])
            Z = BangVector.of([rng.uniform(-3, 3) for _ in range(n)])
            ok &= bang_norm(X).value >= 0.0
            ok &= abs(bang_distance(X, Y) - bang_distance(Y, X)) <= 1e-15
            ok &= bang_distance(X, Z) <= (
                bang_distance(X, Y) + bang_distance(Y, Z)
            ) * (1 + 1e-12)
            # oracle equivalence and achieving-index cap
            cert = bang_norm(X)
            ok &= abs(cert.value - exhaustive(X)) <= 1e-12 * max(
                1.0, cert.value
            )
            cap = smallest_exceeding_index(X)
            if cap is not None:
                ok &= cert.achieving_index <= cap
        bracketed = 0
        while bracketed < 1000:
            n = rng.randint(2, 15)
            X = BangVector.of([rng.uniform(-1, 1) for _ in range(n)])
            v = bang_norm(X).value
            lo = [k for k in X.index_set if math.exp(-k) <= v * (1 + 1e-12)]
            hi = [k for k in X.index_set if math.exp(-k) >= v * (1 - 1e-12)]
            if not lo or not hi:
                continue
            k1, k2 = lo[0], hi[-1]
            k = bracket_achieving_index(X, k1, k2)
            ok &= k2 <= k <= k1
            bracketed += 1
        report("5 Bang norm axioms, cap, bracket, exhaustive oracle", ok)

    def test_06_gontcharoff_boundary_and_symbolic_oracle(self):
        rng = random.Random(0x60C)
        ok = True
        for degree in range(1, 13):
            for _ in range(100):
                nodes = [
                    Fraction(rng.randint(-32, 32), 16) for _ in range(degree)
                ]
                Q = gontcharoff_poly(NodeList.of(nodes))
                for m in range(degree):
                    dm = Q.derivative_coefficients(m)
                    acc = Fraction(0)
                    for c in reversed(dm):
                        acc = acc * nodes[m] + c
                    ok &= acc == 0
                ok &= Q.derivative_coefficients(degree) == (Fraction(1),)
        # degree-3 coefficients against a symbolic-integration oracle
        nodes = [Fraction(1), Fraction(1, 2), Fraction(1, 4)]
        Q = gontcharoff_poly(NodeList.of(nodes))
        x = sympy.Symbol("x")
        expr = sympy.Integer(1)
        for node in reversed(nodes):
            t = sympy.Symbol("t")
            expr = sympy.integrate(
                expr.subs(x, t), (t, sympy.Rational(node), x)
            )
        expected = list(reversed(sympy.Poly(expr, x).all_coeffs()))
        got = [
            sympy.Rational(c.numerator, c.denominator) for c in Q.coefficients
        ]
        ok &= got == expected
        report("6 boundary conditions exact, degree-3 matches symbolic", ok)

    def test_07_sandwich(self):
        rng = random.Random(0x5A17)
        checked = 0
        ok = True
        while checked < 1000:
            n = rng.randint(1, 10)
            vals = sorted({rng.uniform(-1, 1) for _ in range(n)}, reverse=True)
            if not vals:
                continue
            Q = gontcharoff_poly(NodeList.of(vals))
            x = vals[0] + rng.uniform(1e-6, 2.0)
            lower, value, upper, holds = sandwich_check(Q, x)
            ok &= holds
            checked += 1
        # equal-node degeneration: classical Taylor weights, exactly
        c = Fraction(1, 4)
        for n in range(1, 7):
            Q = gontcharoff_poly(NodeList.of([c] * n))
            xv = Fraction(9, 8)
            ok &= Q.evaluate_exact(xv) == (xv - c) ** n / math.factorial(n)
        report("7 sandwich bound on 1000 node lists, Taylor degeneration", ok)

    def test_08_generalized_taylor(self):
        rng = random.Random(0x6E4)
        ok = True
        # polynomial inputs: remainder exactly recoverable to ~0
        for _ in range(50):
            d = rng.randint(0, 4)
            coeffs = [rng.uniform(-2, 2) for _ in range(d + 1)]
            f = make_oracle("polynomial", {"coeffs": coeffs}, (-1, 1))
            m = rng.randint(d, 6)
            nodes = NodeList.of(
                sorted(
                    [rng.uniform(-0.9, 0.9) for _ in range(m + 1)],
                    reverse=True,
                ),
                interval=(-1, 1),
            )
            result = generalized_taylor(f, nodes, m, 0.95)
            ok &= abs(result.remainder) <= 1e-9 * max(1.0, abs(result.value))
        # exp: remainder in the mean-value bracket
        f = make_oracle("exp_scaled", {}, (0, 1))
        for _ in range(1000):
            m = rng.randint(0, 5)
            vals = sorted(
                [rng.uniform(0.0, 0.8) for _ in range(m + 1)], reverse=True
            )
            nodes = NodeList.of(vals, interval=(0, 1))
            # the mean-value bracket needs the evaluation point beyond the
            # first node, where the kernel keeps one sign
            x = rng.uniform(vals[0], 1.0)
            result = generalized_taylor(f, nodes, m, x)
            lo, hi = result.bracket
            ok &= lo - 1e-12 <= result.remainder <= hi + 1e-12
        # clustered nodes: reconstruction error decreases in m
        node_vals = [0.3 * 0.7**j for j in range(12)]
        assert sum(
            abs(a - b) for a, b in zip(node_vals, node_vals[1:])
        ) <= 0.3
        nodes = NodeList.of(node_vals, interval=(0, 1))
        errors = [
            abs(generalized_taylor(f, nodes, m, 0.9).remainder)
            for m in range(10)
        ]
        ok &= all(b <= a * (1 + 1e-12) for a, b in zip(errors, errors[1:]))
        report("8 generalized Taylor: exactness, bracket, convergence", ok)

    def test_09_majorant_suite(self):
        rng = random.Random(0x4A30)
        factorial4 = WeightSequence.from_logs(
            [math.lgamma(n + 1) + n * math.log(4) for n in range(41)]
        )
        cases = [
            (
                make_oracle("exp_scaled", {"amplitude": 1 / math.e}, (0, 1)),
                canonical_sequence("factorial", 40),
            ),
            (
                make_oracle("sin", {"amplitude": 1 / math.e}, (0, math.pi)),
                canonical_sequence("factorial", 40),
            ),
            (
                make_oracle("rational_pole", {"amplitude": 0.5}, (0, 0.5)),
                factorial4,
            ),
        ]
        ok = True
        for f, M in cases:
            profile = build_profile(f, M, range(8), 50)
            ok &= majorant_properties_check(profile).ok
            a, b = f.interval
            for _ in range(1000):
                t = rng.uniform(a, b)
                tau = rng.uniform(a - t, b - t)
                n = rng.randint(0, 5)
                q = rng.randint(n + 1, 12)
                lhs, rhs, holds = lemma_estimate_check(f, M, n, q, t, tau)
                ok &= holds
        report(
            "9 majorant properties and translation estimate, 3 catalog"
            " members x 1000 samples",
            ok,
        )

    def test_10_monotonicity_certificates(self):
        exp = make_oracle("exp_scaled", {}, (0, 1))
        pole = make_oracle("rational_pole", {"scale": -0.5}, (0, 1))
        sin = make_oracle("sin", {}, (0, math.pi))
        ok = (
            monotonicity_certificate(exp, 20, 1000).all_positive
            and monotonicity_certificate(pole, 20, 1000).all_positive
            and not monotonicity_certificate(sin, 20, 1000).all_positive
        )
        report("10 positivity dichotomy: exp/shifted pole vs sin", ok)

    def test_11_derivative_oracle_consistency(self):
        catalog = [
            ("exp_scaled", {"c": 1.0}, (0.0, 1.0)),
            ("sin", {}, (0.0, math.pi)),
            ("cos", {}, (0.0, math.pi)),
            ("rational_pole", {}, (0.0, 1.0)),
            ("polynomial", {"coeffs": [1, -1, 0.5, 2]}, (-1.0, 1.0)),
            ("flat", {}, (0.1, 1.0)),
            ("zero", {}, (0.0, 1.0)),
        ]
        h = 1e-5
        ok = True
        for name, params, (a, b) in catalog:
            f = make_oracle(name, params, (a, b))
            for n in range(1, 7):
                for frac in (0.2, 0.5, 0.8):
                    x = a + (b - a) * frac
                    fd = (
                        f.deriv(n - 1, x + h) - f.deriv(n - 1, x - h)
                    ) / (2 * h)
                    exact = f.deriv(n, x)
                    scale = max(abs(exact), abs(fd), 1e-8)
                    ok &= abs(fd - exact) <= 1e-5 * scale
        report("11 finite-difference cross-check, full catalog", ok)

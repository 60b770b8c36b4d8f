"""Acceptance criteria for the counterexample reproduction.

Each test prints one ``PASS``/``FAIL`` line; run with ``pytest -s`` to see them.
"""
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from capax import fixtures
from capax.graph import (
    hamming_graph,
    product_index,
    strong_product,
)
from capax.hamming_scheme import (
    DistanceProfile,
    certificate_profiles,
    load_certificate_transcription,
    profile_matrix,
    profile_matrix_int,
    profile_spectrum,
)
from capax.independence import (
    EXACT,
    SearchBudget,
    count_maximum_independent_sets,
    is_independent_set,
    max_independent_set,
)
from capax.pipeline import capacity_lower_bound, run_counterexample
from capax.sdp import Status, Variant, lovasz_theta, schrijver_theta
from capax.spectra import exact_psd_certify, group_multiplicities, hoffman_bound, sym_eigenvalues
from oracles import alpha_brute, random_graph, strong_adjacent


def verdict(label: str, ok: bool, detail: str) -> None:
    print(f"\n{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    assert ok, f"{label}: {detail}"


def test_c1_alpha_exact():
    t0 = time.perf_counter()
    g = hamming_graph(5, [1, 2])
    size, cert, status = max_independent_set(g)
    fixture_ok = is_independent_set(g, [18, 14, 1, 29])
    dt = time.perf_counter() - t0
    ok = size == 4 and status == EXACT and fixture_ok and dt < 1.0
    verdict("C1 alpha(G)=4", ok, f"alpha={size} ({status}), fixture independent={fixture_ok}, {dt:.3f}s")


def test_c2_exact_theta_prime_chain():
    t0 = time.perf_counter()
    g = hamming_graph(5, [1, 2])
    sch, _ = certificate_profiles()
    x = profile_matrix(sch)
    violation = max(
        max(Fraction(0), 1 - x[i, j]) for i in range(32) for j in range(i, 32) if not g.has_edge(i, j)
    )
    lam = profile_spectrum(sch).max
    m = np.array([[int(v) for v in r] for r in x.scaled_shift(4, -1).rows()], dtype=object)
    identity = bool((m.dot(m) == 16 * m).all())
    psd = exact_psd_certify(x.scaled_shift(4, -1)).is_psd
    alpha = max_independent_set(g)[0]
    dt = time.perf_counter() - t0
    ok = violation == 0 and lam == 4 and identity and psd and alpha == lam and dt < 1.0
    verdict("C2 theta'(G)=4 exactly", ok,
            f"violation={violation}, lambda_max={lam}, (4I-X)^2=16(4I-X): {identity}, {dt:.3f}s")


@pytest.mark.parametrize("variant,expected", [(Variant.SCHRIJVER, 4.0), (Variant.LOVASZ, 16 / 3)],
                         ids=["theta_prime", "theta"])
def test_c3_sdp_values(variant, expected):
    g = hamming_graph(5, [1, 2])
    t0 = time.perf_counter()
    sol = (schrijver_theta if variant is Variant.SCHRIJVER else lovasz_theta)(g, 1e-7)
    dt = time.perf_counter() - t0
    err = abs(sol.value - expected)
    ok = sol.status is Status.CONVERGED and err <= 1e-4 and dt < 60
    verdict(f"C3 SDP {variant.value}", ok, f"value={sol.value:.6f} err={err:.1e} {sol.status.value}, {dt:.2f}s")


def test_c4_hoffman_and_spectrum():
    h = hoffman_bound(32, 15, -3)
    spec = profile_spectrum(DistanceProfile.indicator(5, [1, 2]))
    ok = h == Fraction(16, 3) and spec.min == -3 and spec.multiplicity(-3) == 10
    verdict("C4 Hoffman bound", ok, f"hoffman={h}, lambda_min={spec.min} x{spec.multiplicity(-3)}")


def test_c5_capacity_verdict():
    t0 = time.perf_counter()
    g = hamming_graph(5, [1, 2])
    pset = fixtures.product_independent_set()
    independent = len(pset) == 20 and is_independent_set(strong_product(g, g), pset)
    lb = capacity_lower_bound(g, 2, SearchBudget(max_nodes=100), seed=pset)
    dt = time.perf_counter() - t0
    report = run_counterexample()
    ok = (independent and abs(lb - math.sqrt(20)) < 1e-12 and report.verdict
          and report.capacity_lb > report.theta_prime_sdp + 0.4 and dt < 5.0)
    verdict("C5 Theta >= sqrt(20) > theta'", ok,
            f"lb={lb:.4f}, theta'_sdp={report.theta_prime_sdp:.4f}, verdict={report.verdict}, {dt:.3f}s")


def test_c6_transcription():
    t = load_certificate_transcription()
    generated = profile_matrix_int(certificate_profiles()[0])
    corrected = t.corrected()
    mismatches = sum(corrected[i][j] != generated[i][j] for i in range(32) for j in range(32))
    # 1-based i + j = 33
    antidiag = all((generated[i][j] == 3) == (i + j == 31) for i in range(32) for j in range(32))
    ok = mismatches == 0 and antidiag
    verdict("C6 certificate transcription", ok,
            f"mismatches after {len(t.errata)} documented erratum={mismatches}, antidiagonal of 3s={antidiag}")


def test_c7_property_suite():
    t0 = time.perf_counter()
    rng = random.Random(7)
    worst = 0.0
    bad = 0
    for i in range(200):
        g = random_graph(rng.randint(1, 14), rng.choice([0.1, 0.3, 0.5, 0.7]), rng)
        a = alpha_brute(g)
        tp = schrijver_theta(g).value
        t = lovasz_theta(g).value
        if not (a <= tp + 1e-4 <= t + 2e-4):
            bad += 1
        worst = max(worst, a - tp, tp - t)
    prod_bad = 0
    for _ in range(40):
        g = random_graph(rng.randint(1, 6), rng.random(), rng)
        h = random_graph(rng.randint(1, 6), rng.random(), rng)
        p = strong_product(g, h)
        for a in range(g.n):
            for b in range(h.n):
                for c in range(g.n):
                    for d in range(h.n):
                        got = p.has_edge(product_index(a, b, h.n), product_index(c, d, h.n))
                        prod_bad += got != strong_adjacent(g, h, (a, b), (c, d))
        if max_independent_set(p)[0] < alpha_brute(g) * alpha_brute(h):
            prod_bad += 1
    dt = time.perf_counter() - t0
    ok = bad == 0 and prod_bad == 0 and dt < 600
    verdict("C7 sandwich and product properties", ok,
            f"sandwich failures={bad}/200 (worst excess {worst:.1e}), product failures={prod_bad}, {dt:.1f}s")


def test_c8_eigensolver():
    rng = random.Random(8)
    profiles = [p for p in certificate_profiles()]
    for m in range(1, 7):
        profiles.append(DistanceProfile.indicator(m, [1]))
        for _ in range(8):
            profiles.append(DistanceProfile.of(
                [Fraction(rng.randint(-12, 12), rng.randint(1, 9)) for _ in range(m + 1)]))
    worst = 0.0
    grouping_ok = True
    for p in profiles:
        spec = profile_spectrum(p)
        floating = sym_eigenvalues(profile_matrix(p).to_float(), 1e-12)
        exact = [float(v) for v in spec.as_list()]
        worst = max(worst, max(abs(a - b) for a, b in zip(floating, exact)))
        expected = []
        for lam, mu in spec.distinct():
            if expected and expected[-1][0] - float(lam) < 1e-6:
                expected[-1][1] += mu
            else:
                expected.append([float(lam), mu])
        grouping_ok &= [mu for _, mu in group_multiplicities(floating)] == [mu for _, mu in expected]
    ok = worst <= 1e-9 and grouping_ok
    verdict("C8 Jacobi vs Krawtchouk", ok,
            f"{len(profiles)} profiles, max abs error={worst:.1e}, multiplicities match={grouping_ok}")


@pytest.mark.slow
def test_c9_optional_exact_product_alpha():
    """Optional: exact alpha(G boxtimes G) under a budget. Never gates the suite."""
    g = hamming_graph(5, [1, 2])
    p = strong_product(g, g)
    budget = SearchBudget(max_nodes=10**9, max_seconds=60.0)
    t0 = time.perf_counter()
    size, cert, status = max_independent_set(p, budget, initial=fixtures.product_independent_set())
    dt = time.perf_counter() - t0
    assert size >= 20 and is_independent_set(p, cert.vertices)
    if status == EXACT:
        assert size == 20
        count, cstatus = count_maximum_independent_sets(p, 20, budget)
        print(f"\nPASS  C9 (optional) alpha(G.G)=20 exact in {dt:.1f}s; {count} maximum sets ({cstatus})")
    else:
        print(f"\nSKIP  C9 (optional, not gating): budget of {budget.max_seconds:.0f}s exhausted, "
              f"best size {size} ({status}); exactness not established")

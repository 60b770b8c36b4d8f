"""End-to-end check that Schrijver's theta fails to bound the Shannon capacity.

The witness graph ``G`` lives on ``{0,1}^5`` with edges between tuples at
Hamming distance 1 or 2. The chain verified here is

    alpha(G) = 4 = theta'(G) < theta(G) = 16/3,
    Theta(G) >= sqrt(alpha(G x G)) >= sqrt(20) > 4 = theta'(G).
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import fixtures
from .graph import Graph, hamming_graph, strong_power, strong_product
from .hamming_scheme import (
    DistanceProfile,
    certificate_profiles,
    load_certificate_transcription,
    profile_matrix,
    profile_matrix_int,
    profile_spectrum,
    schrijver_to_lovasz_entry,
)
from .independence import EXACT, LOWER_BOUND, SearchBudget, is_independent_set, max_independent_set
from .sdp import (
    SolverError,
    Status,
    ThetaProgram,
    Variant,
    lovasz_theta,
    schrijver_theta,
    verify_feasible,
)
from .spectra import exact_psd_certify, format_fraction, hoffman_bound

CUBE_DIM = 5
EDGE_DISTANCES = (1, 2)
VERDICT_MARGIN = 0.1
SDP_AGREEMENT = 1e-4


class CounterexampleError(RuntimeError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"check {check!r} failed: {detail}")
        self.check = check
        self.detail = detail


@dataclass
class FixtureCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CounterexampleReport:
    alpha_G: int
    theta_prime_sdp: float
    theta_sdp: float
    theta_exact: Fraction
    theta_prime_exact: Fraction
    lambda_max_X_exact: Fraction
    theta_hoffman: Fraction
    alpha_product_lb: int
    alpha_product_status: str
    capacity_lb: float
    verdict: bool
    fixture_checks: list[FixtureCheck] = field(default_factory=list)
    sdp_status: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        for key in ("theta_exact", "theta_prime_exact", "lambda_max_X_exact", "theta_hoffman"):
            d[key] = format_fraction(getattr(self, key))
        return d

    @classmethod
    def from_json(cls, obj: dict) -> "CounterexampleReport":
        obj = dict(obj)
        for key in ("theta_exact", "theta_prime_exact", "lambda_max_X_exact", "theta_hoffman"):
            obj[key] = Fraction(obj[key])
        obj["fixture_checks"] = [FixtureCheck(**c) for c in obj["fixture_checks"]]
        return cls(**obj)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        lines = [
            "5-cube graph, edges at Hamming distance 1 or 2 (32 vertices, 15-regular)",
            f"  alpha(G)                 = {self.alpha_G}",
            f"  theta'(G)  exact         = {self.theta_prime_exact}   (SDP {self.theta_prime_sdp:.6f})",
            f"  theta(G)   exact         = {self.theta_exact}   (SDP {self.theta_sdp:.6f}, eigenvalue bound {self.theta_hoffman})",
            f"  lambda_max(X) exact      = {self.lambda_max_X_exact}",
            f"  alpha(G x G)            >= {self.alpha_product_lb}   [{self.alpha_product_status}]",
            f"  Theta(G)                >= sqrt({self.alpha_product_lb}) = {self.capacity_lb:.6f}",
            "",
            "checks:",
        ]
        for c in self.fixture_checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f" ({c.detail})" if c.detail else ""))
        lines.append("")
        verdict = "holds" if self.verdict else "DOES NOT hold"
        lines.append(
            f"verdict: Theta(G) >= {self.capacity_lb:.4f} > {self.theta_prime_sdp:.4f} = theta'(G) {verdict}"
        )
        return "\n".join(lines)


def witness_graph() -> Graph:
    return hamming_graph(CUBE_DIM, EDGE_DISTANCES)


def capacity_lower_bound(
    g: Graph, k: int, budget: SearchBudget | None = None, seed=None, threads: int = 1
) -> float:
    """``alpha(G^k)^(1/k)`` with ``alpha`` from (possibly budget-limited) search.

    Any independent set found is a valid lower bound, so the result bounds
    the Shannon capacity from below whatever the search status.
    """
    power = strong_power(g, k)
    size, _, _ = max_independent_set(power, budget, initial=seed, threads=threads)
    return size ** (1.0 / k)


def capacity_upper_bound(g: Graph, tol: float = 1e-7) -> float:
    sol = lovasz_theta(g, tol)
    if sol.status is not Status.CONVERGED:
        raise SolverError(f"Lovasz theta solve ended with {sol.status.value}")
    return sol.value


def integer_square_identity(profile: DistanceProfile, shift: int, factor: int) -> bool:
    """Check ``(shift I - X)^2 == factor (shift I - X)`` entrywise in integers.

    The identity says ``shift I - X`` is ``factor`` times a projection, so
    it is PSD and ``lambda_max(X) <= shift``; no eigenvalue code involved.
    """
    x = profile_matrix_int(profile)
    n = len(x)
    m = [[(shift if i == j else 0) - x[i][j] for j in range(n)] for i in range(n)]
    cols = list(zip(*m))
    return all(
        sum(a * b for a, b in zip(m[i], cols[j])) == factor * m[i][j]
        for i in range(n)
        for j in range(n)
    )


def run_counterexample(
    budget: SearchBudget | None = None,
    tol: float = 1e-7,
    exact_product: bool = False,
    product_budget: SearchBudget | None = None,
    threads: int = 1,
) -> CounterexampleReport:
    budget = budget or SearchBudget(max_seconds=10.0)
    checks: list[FixtureCheck] = []
    timings: dict[str, float] = {}

    def check(name: str, ok: bool, detail: str = ""):
        checks.append(FixtureCheck(name, bool(ok), detail))
        if not ok:
            raise CounterexampleError(name, detail or "assertion failed")

    clock = time.perf_counter()
    g = witness_graph()
    check("graph is 15-regular with 240 edges", g.regular_degree() == 15 and g.num_edges() == 240)

    # Independence number.
    alpha, _, status = max_independent_set(g, budget)
    check("alpha(G) search is exact", status == EXACT, f"status {status}")
    check("alpha(G) = 4", alpha == 4, f"found {alpha}")
    seed = fixtures.independent_set()
    check("size-4 witness set is independent", len(seed) == 4 and is_independent_set(g, seed),
          f"vertices {seed}")
    timings["alpha"] = time.perf_counter() - clock

    # Exact dual certificates.
    clock = time.perf_counter()
    sch_profile, lov_profile = certificate_profiles()
    x_sch = profile_matrix(sch_profile)
    x_lov = profile_matrix(lov_profile)
    sch_prog = ThetaProgram(g, Variant.SCHRIJVER)
    nonedges = sch_prog.constrained_pairs()
    check("Schrijver certificate feasible (non-edge entries >= 1)",
          all(x_sch[i, j] >= 1 for i, j in nonedges))
    check("Lovasz certificate feasible (non-edge entries = 1)",
          all(x_lov[i, j] == 1 for i, j in nonedges))
    lam_f, viol = verify_feasible(sch_prog, x_sch.to_float())
    check("floating feasibility check of X", viol == 0 and abs(lam_f - 4) < 1e-9,
          f"lambda_max {lam_f:.12f}, violation {viol}")
    check("Lovasz certificate is the entrywise image of the Schrijver one",
          all(schrijver_to_lovasz_entry(a) == b for a, b in zip(x_sch.lower, x_lov.lower)))

    transcription = load_certificate_transcription()
    generated = profile_matrix_int(sch_profile)
    printed = transcription.printed()
    mismatches = [(i, j) for i in range(32) for j in range(32) if printed[i][j] != generated[i][j]]
    check("printed certificate differs from the generated one only at listed errata",
          set(mismatches) == set(transcription.errata), f"mismatches {mismatches}")
    check("corrected printed certificate equals the generated one",
          transcription.corrected() == generated)

    sch_spec = profile_spectrum(sch_profile)
    lov_spec = profile_spectrum(lov_profile)
    lam_x = sch_spec.max
    check("lambda_max(X) = 4 exactly", lam_x == 4, f"got {lam_x}")
    check("(4I - X)^2 = 16(4I - X) in integers", integer_square_identity(sch_profile, 4, 16))
    check("4I - X is PSD (exact LDL^T)", exact_psd_certify(x_sch.scaled_shift(4, -1)).is_psd)
    lam_lov = lov_spec.max
    check("lambda_max(X_hat) = 16/3 exactly", lam_lov == Fraction(16, 3), f"got {lam_lov}")
    check("(16/3)I - X_hat is PSD (exact LDL^T)",
          exact_psd_certify(x_lov.scaled_shift(Fraction(16, 3), -1)).is_psd)

    adj_spec = profile_spectrum(DistanceProfile.indicator(CUBE_DIM, EDGE_DISTANCES))
    lam_min = adj_spec.min
    check("adjacency lambda_min = -3 with multiplicity 10",
          lam_min == -3 and adj_spec.multiplicity(lam_min) == 10)
    theta_h = hoffman_bound(g.n, g.regular_degree(), lam_min)
    check("eigenvalue bound = 16/3", theta_h == Fraction(16, 3), f"got {theta_h}")

    # Sandwich: alpha <= theta' <= lambda_max(X).
    check("alpha(G) = lambda_max(X) pins theta'(G)", Fraction(alpha) == lam_x)
    theta_prime_exact = lam_x
    theta_exact = lam_lov
    check("certificate and eigenvalue bound agree on theta", theta_exact == theta_h)
    timings["certificates"] = time.perf_counter() - clock

    # Numerical SDP corroboration.
    clock = time.perf_counter()
    sol_p = schrijver_theta(g, tol)
    sol_t = lovasz_theta(g, tol)
    timings["sdp"] = time.perf_counter() - clock
    if sol_p.status is Status.NUMERICAL_FAILURE or sol_t.status is Status.NUMERICAL_FAILURE:
        raise SolverError("SDP solve failed")
    check("SDP theta' converged", sol_p.status is Status.CONVERGED, sol_p.status.value)
    check("SDP theta converged", sol_t.status is Status.CONVERGED, sol_t.status.value)
    check("SDP theta' within 1e-4 of 4", abs(sol_p.value - 4) <= SDP_AGREEMENT, f"{sol_p.value:.9f}")
    check("SDP theta within 1e-4 of 16/3", abs(sol_t.value - 16 / 3) <= SDP_AGREEMENT,
          f"{sol_t.value:.9f}")
    check("ranking alpha = theta' < theta",
          alpha == theta_prime_exact < theta_exact and sol_p.value < sol_t.value)

    # Strong square.
    clock = time.perf_counter()
    gg = strong_product(g, g)
    pset = fixtures.product_independent_set()
    check("size-20 set is independent in G x G",
          len(pset) == 20 and is_independent_set(gg, pset), f"{len(pset)} vertices")
    alpha_lb = len(pset)
    product_status = LOWER_BOUND
    if exact_product:
        size, _, st = max_independent_set(
            gg, product_budget or SearchBudget(max_seconds=600), initial=pset, threads=threads
        )
        alpha_lb, product_status = size, st
    check("alpha(G x G) >= alpha(G)^2", alpha_lb >= alpha * alpha)
    capacity_lb = math.sqrt(alpha_lb)
    timings["product"] = time.perf_counter() - clock

    verdict = capacity_lb > sol_p.value + VERDICT_MARGIN
    return CounterexampleReport(
        alpha_G=alpha,
        theta_prime_sdp=sol_p.value,
        theta_sdp=sol_t.value,
        theta_exact=theta_exact,
        theta_prime_exact=theta_prime_exact,
        lambda_max_X_exact=lam_x,
        theta_hoffman=theta_h,
        alpha_product_lb=alpha_lb,
        alpha_product_status=product_status,
        capacity_lb=capacity_lb,
        verdict=verdict,
        fixture_checks=checks,
        sdp_status={"theta": sol_t.status.value, "theta_prime": sol_p.status.value},
        timings=timings,
    )

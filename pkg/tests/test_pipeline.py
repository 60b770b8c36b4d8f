import json
import math
from fractions import Fraction

import pytest

from capax import fixtures, pipeline
from capax.graph import complete_graph, cycle_graph
from capax.hamming_scheme import certificate_profiles
from capax.independence import SearchBudget
from capax.pipeline import (
    CounterexampleError,
    CounterexampleReport,
    capacity_lower_bound,
    capacity_upper_bound,
    integer_square_identity,
    run_counterexample,
    witness_graph,
)


@pytest.fixture(scope="module")
def report():
    return run_counterexample(tol=1e-7)


def test_verdict(report):
    assert report.verdict
    assert report.capacity_lb == pytest.approx(math.sqrt(20))
    assert report.capacity_lb > report.theta_prime_sdp + 0.4
    assert report.theta_prime_sdp == pytest.approx(4.0, abs=1e-4)


def test_ranking(report):
    assert report.alpha_G == 4 == report.theta_prime_exact
    assert report.theta_prime_exact < report.theta_exact == Fraction(16, 3)
    assert report.theta_hoffman == Fraction(16, 3)
    assert abs(report.theta_sdp - 16 / 3) <= 1e-4
    assert report.lambda_max_X_exact == 4


def test_product_bound(report):
    assert report.alpha_product_lb == 20 >= report.alpha_G**2
    assert report.alpha_product_status == "lower-bound"


def test_all_checks_recorded(report):
    assert all(c.passed for c in report.fixture_checks)
    assert len(report.fixture_checks) >= 20


def test_verdict_is_computed_not_hardcoded(report):
    assert report.verdict == (report.capacity_lb > report.theta_prime_sdp + pipeline.VERDICT_MARGIN)


def test_report_round_trip(report):
    text = report.dumps()
    back = CounterexampleReport.from_json(json.loads(text))
    assert back == report
    assert json.loads(text)["theta_exact"] == "16/3"


def test_summary_mentions_verdict(report):
    assert "holds" in report.summary()


def test_integer_identity():
    sch, _ = certificate_profiles()
    assert integer_square_identity(sch, 4, 16)
    assert not integer_square_identity(sch, 5, 16)


def test_capacity_lower_bounds(gp):
    assert capacity_lower_bound(gp, 1) == 4.0
    seeded = capacity_lower_bound(gp, 2, SearchBudget(max_nodes=100), seed=fixtures.product_independent_set())
    assert seeded == pytest.approx(math.sqrt(20), abs=1e-12)
    for k in (1, 2, 3):
        assert capacity_lower_bound(complete_graph(1), k) == 1.0


def test_capacity_upper_bounds():
    assert capacity_upper_bound(complete_graph(6)) == pytest.approx(1.0, abs=1e-6)
    assert capacity_upper_bound(cycle_graph(5)) == pytest.approx(math.sqrt(5), abs=1e-4)


def test_capacity_bounds_sandwich_c5():
    # alpha(C5^2) = 5 gives the matching lower bound sqrt(5).
    lo = capacity_lower_bound(cycle_graph(5), 2)
    assert lo == pytest.approx(math.sqrt(5))
    assert lo <= capacity_upper_bound(cycle_graph(5)) + 1e-6


def test_corrupted_fixture_aborts(monkeypatch):
    bad = fixtures.product_independent_set()
    bad[0] = bad[1] + 1 if bad[1] + 1 not in bad else bad[1] - 1
    monkeypatch.setattr(fixtures, "product_independent_set", lambda: sorted(bad))
    with pytest.raises(CounterexampleError) as exc:
        run_counterexample()
    assert "size-20" in exc.value.check


def test_witness_graph(gp):
    assert witness_graph() == gp

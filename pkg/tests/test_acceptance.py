"""Acceptance gate: every criterion at its pinned parameters, one line each.

Each test runs one criterion through the same suite functions the CLI's
``verify acceptance`` dispatches to, asserts every check passed, and prints a
single PASS/FAIL line (visible with ``pytest -s`` or in captured output).
Stated runtime budgets are asserted where the criterion pins one.
"""

import time
from fractions import Fraction as F

from hyperfrac import suites
from hyperfrac.addressing import verify_lex_order
from hyperfrac.cli import main


def _report(name, lines, seconds=None, budget=None):
    ok = all(line.passed for line in lines)
    stamp = f" [{seconds:.2f}s]" if seconds is not None else ""
    print(f"{name} {'PASS' if ok else 'FAIL'}{stamp}")
    for line in lines:
        if not line.passed:
            print(f"  failed: {line.name} {line.detail}")
    assert ok, f"{name} has failing checks"
    if budget is not None:
        assert seconds < budget, f"{name} took {seconds:.2f}s, budget {budget}s"


def test_a01_cantor_oracle():
    start = time.monotonic()
    lines = suites.cantor_suite(depth=10)
    _report("A01-cantor-oracle", lines, time.monotonic() - start, budget=1.0)


def test_a02_lex_order_exhaustive():
    start = time.monotonic()
    report = verify_lex_order(10)
    elapsed = time.monotonic() - start
    print(f"A02-lex-order-exhaustive {'PASS' if report.passed else 'FAIL'} "
          f"[{elapsed:.2f}s, {report.pairs_checked} pairs]")
    assert report.passed
    assert report.pairs_checked > 500_000
    assert elapsed < 30.0


def test_a03_series_identity():
    line = suites.series_identity_check(8)
    _report("A03-series-identity", [line])


def test_a04_chain_inequality():
    line = suites.chain_check(20)
    _report("A04-chain-inequality", [line])


def test_a05_gap_separation():
    _report("A05-gap-separation", suites.gaps_suite(n_max=10))


def test_a06_threshold_chart():
    _report("A06-threshold-chart", suites.conditions_suite(2, 50))


def test_a07_delta_certificate():
    _report("A07-delta-certificate", suites.delta_choice_suite(200))


def test_a08_section_construction():
    _report("A08-section-construction", suites.sections_suite(4))


def test_a09_reduction_locality():
    _report("A09-reduction-locality", suites.locality_suite(pairs=20, seed=3))


def test_a10_witness_pair():
    _report("A10-witness-pair", suites.witness_suite(extra_depth=4))


def test_a11_preimage_identity():
    start = time.monotonic()
    lines = suites.preimage_suite(random_count=10 ** 4, seed=7)[:2]
    _report("A11-preimage-identity", lines, time.monotonic() - start, budget=60.0)


def test_a12_covering_counts():
    _report("A12-covering-counts", suites.counting_suite(20, 1000))


def test_a13_banach_certificates():
    _report("A13-banach-certificates", suites.banach_suite(3, 8))


def test_a14_metric_axioms():
    _report("A14-metric-axioms", suites.metric_suite(1000, seed=11))


def test_acceptance_suite_runs_through_cli(capsys):
    # the whole gate is drivable from the CLI alone
    code = main(["verify", "acceptance"])
    out = capsys.readouterr().out
    print(out)
    assert code == 0
    for idx in range(1, 15):
        assert f"A{idx:02d}-" in out
    assert "FAIL" not in out

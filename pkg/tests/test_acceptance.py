"""Acceptance gate: one test and one printed pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.  Every
quantified-over-all-n criterion is checked at the stated finite horizon;
this is property-based evidence, not a proof.

Known red: criterion 7's extremal bracket demands best_ratio in (1.9, 2.0)
at truncation 100000, but the truncated-section norm there is ~1.8626, so
no input can reach 1.9 at that horizon (convergence of the ratio to the
sharp constant 2 is logarithmic).  The check is implemented exactly as
stated and fails honestly.
"""

import time

import numpy as np
import pytest

from hardylab.redheffer import RedhefferParams, k_of_p, solve_x_half
from hardylab.sequences import levin_steckin_sequence
from hardylab.verify import (
    DEFAULT_SEED,
    boundary_algebra_claims,
    forward_sample_claims,
    hardy_bracketing_claims,
    lemma_suite_claims,
    power_choice_claims,
    redheffer_constant_claims,
    reverse_machinery_claims,
    theorem6_floor_claims,
)

N_MAX = 10000


def _report(number, label, rows, elapsed, limit=None):
    ok = all(r.holds for r in rows)
    if limit is not None:
        ok = ok and elapsed < limit
    status = "PASS" if ok else "FAIL"
    failing = ", ".join(r.claim for r in rows if not r.holds)
    suffix = f" failing: {failing}" if failing else ""
    print(f"[acceptance] criterion {number} ({label}): {status} "
          f"({elapsed:.2f}s){suffix}")
    return ok, failing


def test_criterion_1_redheffer_constants():
    start = time.perf_counter()
    rows = redheffer_constant_claims(N_MAX)
    x = solve_x_half(0.4)
    beta = 1.0 - 2.5 * x
    k = k_of_p(RedhefferParams(p=0.5, c=2.5, beta=beta), N_MAX)
    elapsed = time.perf_counter() - start
    ok, failing = _report(1, "recurrent-route constants", rows, elapsed, limit=1.0)
    assert abs(x - 0.2435) < 5e-4
    assert abs(beta - 0.3912) < 5e-4
    assert abs(k - 1.1151) < 1e-3
    assert 1.0 / k > 0.8967
    assert elapsed < 1.0
    assert ok, failing


def test_criterion_2_tail_mean_floor():
    start = time.perf_counter()
    rows = theorem6_floor_claims(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    ok, failing = _report(2, "tail-mean floor at one half", rows, elapsed, limit=30.0)
    for row in rows:
        assert row.value >= 0.8967 - 1e-9
    assert elapsed < 30.0
    assert ok, failing


def test_criterion_3_reverse_machinery():
    start = time.perf_counter()
    rows = reverse_machinery_claims(N_MAX)
    # identity residual across every index, not a sample
    for p in (0.1, 0.2, 0.25, 1.0 / 3.0):
        seq = levin_steckin_sequence(p, N_MAX)
        n = np.arange(1, N_MAX + 1, dtype=float)
        shift = 1.0 / p - 2.0
        ident = (n + shift) / (1.0 + shift) * seq.w
        residual = np.max(np.abs(seq.W - ident) / seq.W)
        assert residual <= 1e-12
    elapsed = time.perf_counter() - start
    ok, failing = _report(3, "reverse criterion machinery", rows, elapsed, limit=10.0)
    assert elapsed < 10.0
    assert ok, failing


def test_criterion_4_boundary_algebra():
    start = time.perf_counter()
    rows = boundary_algebra_claims()
    elapsed = time.perf_counter() - start
    ok, failing = _report(4, "feasibility boundary algebra", rows, elapsed)
    by_claim = {r.claim: r for r in rows}
    assert by_claim["4.1-third-equality"].value == pytest.approx(2.0, rel=1e-12)
    assert by_claim["4.2-third-n2-branch"].value == pytest.approx(1.97199, abs=1e-4)
    assert by_claim["4.2-third-n2-branch"].value <= 2.0
    assert ok, failing


def test_criterion_5_forward_samples():
    start = time.perf_counter()
    rows = forward_sample_claims(N_MAX)
    elapsed = time.perf_counter() - start
    ok, failing = _report(5, "forward criterion samples", rows, elapsed, limit=10.0)
    assert elapsed < 10.0
    assert ok, failing


def test_criterion_6_power_choices():
    start = time.perf_counter()
    rows = power_choice_claims(N_MAX)
    elapsed = time.perf_counter() - start
    ok, failing = _report(6, "alternative power choices", rows, elapsed)
    assert ok, failing


def test_criterion_7_hardy_bracketing():
    start = time.perf_counter()
    rows = hardy_bracketing_claims(N_MAX)
    elapsed = time.perf_counter() - start
    ok, failing = _report(7, "classic Hardy bracketing", rows, elapsed, limit=60.0)
    assert elapsed < 60.0
    by_claim = {r.claim: r for r in rows}
    extremal = by_claim["7.2-cesaro-extremal"]
    assert ok, (
        f"{failing}; extremal best_ratio={extremal.value:.6f}. "
        "The truncated-section norm at N=100000 is ~1.8626 (power-iteration "
        "cross-check), so the stated (1.9, 2.0) bracket cannot be met at "
        "this horizon by any input; see notes in the repository README."
    )


def test_criterion_8_lemma_suites():
    start = time.perf_counter()
    rows = lemma_suite_claims(DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    ok, failing = _report(8, "lemma property suites", rows, elapsed, limit=10.0)
    for row in rows:
        if row.value is not None:
            assert row.value >= -1e-12
    assert elapsed < 10.0
    assert ok, failing

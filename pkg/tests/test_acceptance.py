"""End-to-end property criteria.

Each test runs one self-test suite at its stated scale, asserts every check
passed, and enforces the runtime bound.  Failures print the first offending
check and counterexample.
"""

import time

import pytest

from efdkit import selftest

BOUNDS = {
    "piecewise": 60,
    "reduction-oracle": 120,
    "fulldim": 120,
    "endomorphism": 10,
    "star-transfer": 30,
    "mv-classification": 30,
    "decomposition": 60,
    "lattice-laws": 10,
}


def _run(name):
    start = time.monotonic()
    report = selftest.run_suite(name)
    elapsed = time.monotonic() - start
    failed = [c["check"] for c in report.checks if not c["ok"]]
    assert report.passed, (
        f"{name}: {len(failed)} failing check(s), first: {failed[:1]}, "
        f"counterexample: {report.counterexample!r}"
    )
    assert elapsed < BOUNDS[name], f"{name} took {elapsed:.1f}s (bound {BOUNDS[name]}s)"
    return report


def test_piecewise_soundness_on_random_terms():
    report = _run("piecewise")
    assert len(report.checks) == 200


def test_reduction_oracle_on_localized_rationals():
    report = _run("reduction-oracle")
    assert report.checks[-1]["check"] == "instance count >= 50"


def test_full_dimensionality_against_span_oracle():
    _run("fulldim")


def test_t_k_is_an_automorphism_with_inverse_d_k():
    report = _run("endomorphism")
    assert len(report.checks) == 12  # four properties for each k in {2,3,5}


def test_star_translation_transfers_divisibility_and_values():
    _run("star-transfer")


def test_mv_classification_matches_prime_support():
    _run("mv-classification")


def test_radical_decomposition_agrees_with_input():
    _run("decomposition")


def test_class_lattices_and_expansion_duality():
    _run("lattice-laws")

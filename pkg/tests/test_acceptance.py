"""Acceptance gate. One PASS/FAIL line per criterion is printed in the summary.

Where a published reference value disagrees with what the builtin data
actually yields, the check is kept at its stated tolerance and left to fail;
the analysis lives in the project's decisions log.
"""

import time

import numpy as np
import pytest
from conftest import strand_pairs, wc_tables
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import brute_rc, random_search_critical
from reference_values import L4_NAMES, L6_NAMES, REFERENCE_MARGINAL, REFERENCE_P, REFERENCE_T

from stemcode.alphabet import reverse_complement_codes
from stemcode.codes import (
    CodeParams,
    code_min_distance,
    construct_repetition_code,
    exhaustive_max_code,
    is_valid_dna_code,
    sample_strands,
    stem_frequencies,
)
from stemcode.critical import (
    L4,
    L6,
    MARGINAL_ATOL,
    conditional_model,
    marginals,
    markov_condition,
    maximize_critical,
    project_distribution,
)
from stemcode.similarity import duplex_energy, stem_distance, stem_similarity
from stemcode.weights import builtin_tables, constant_table, load_builtin, min_weight, random_wc_table

pytestmark = pytest.mark.acceptance

NAMES = list(REFERENCE_T)
PROPS = settings(max_examples=1000, deadline=None, derandomize=True)


@pytest.fixture(scope="module")
def reports():
    # warm the JIT outside the timed region
    maximize_critical(constant_table())
    t0 = time.perf_counter()
    out = {w.name: maximize_critical(w) for w in builtin_tables()}
    return out, time.perf_counter() - t0


# criterion 1: critical distances of the builtin tables

@pytest.mark.parametrize("name", NAMES)
def test_c1_critical_value(reports, name):
    rep = reports[0][name]
    assert abs(rep.t_value - REFERENCE_T[name]) <= 0.01, (
        f"{name}: computed {rep.t_value:.5f}, reference {REFERENCE_T[name]}"
    )


def test_c1_runtime(reports):
    assert reports[1] < 5.0


# criterion 2: reference maximizers for Unified1998, Gotoh1981, Breslauer1986

@pytest.mark.parametrize("name", ["Unified1998", "Gotoh1981", "Breslauer1986"])
def test_c2_maximizer_entries(reports, name):
    p = reports[0][name].optimum.p
    ref = np.array(REFERENCE_P[name])
    assert np.abs(p - ref).max() <= 0.002, np.round(p - ref, 4)


@pytest.mark.parametrize("name", ["Unified1998", "Gotoh1981", "Breslauer1986"])
def test_c2_marginal_column(reports, name):
    p1, _ = marginals(reports[0][name].optimum)
    assert np.abs(p1 - np.array(REFERENCE_MARGINAL[name])).max() <= 0.002, p1


# criterion 3: forbidden sets

@pytest.mark.parametrize("name", sorted(L4_NAMES | L6_NAMES))
def test_c3_forbidden_set(reports, name):
    expected = L6 if name in L6_NAMES else L4
    assert reports[0][name].forbidden_stems == expected


# criterion 4: regularity

@pytest.mark.parametrize("name", NAMES)
def test_c4_regularity(reports, name):
    rep = reports[0][name]
    if name == "Breslauer1986":
        assert not rep.regular
        assert not markov_condition(conditional_model(rep.optimum, threshold=1e-6))
    else:
        assert rep.regular


# criterion 5: repetition code and exhaustive search

def test_c5_repetition_code():
    code = construct_repetition_code(5)
    assert len(code) == 16
    assert is_valid_dna_code(constant_table(), code, 4).valid


def test_c5_exhaustive_n3():
    t0 = time.perf_counter()
    code, exact = exhaustive_max_code(constant_table(), CodeParams(3, 2))
    assert exact and len(code) == 16
    assert is_valid_dna_code(constant_table(), code, 2).valid
    assert time.perf_counter() - t0 < 60


# criterion 6: property suites

@PROPS
@given(strand_pairs(2, 12), wc_tables())
def test_c6_similarity_symmetric_and_self_maximal(xy, w):
    x, y = xy
    s = stem_similarity(w, x, y)
    assert s == pytest.approx(stem_similarity(w, y, x), abs=1e-12)
    assert s <= stem_similarity(w, x, x) + 1e-12
    assert s <= stem_similarity(w, y, y) + 1e-12


@PROPS
@given(strand_pairs(2, 12), wc_tables())
def test_c6_energy_symmetric(xy, w):
    x, y = xy
    assert duplex_energy(w, x, y) == pytest.approx(duplex_energy(w, y, x), abs=1e-12)


@PROPS
@given(strand_pairs(2, 12), wc_tables())
def test_c6_distance_nonnegative(xy, w):
    x, y = xy
    assert stem_distance(w, x, y) >= -1e-12
    assert stem_distance(w, x, x) == 0


@PROPS
@given(st.text(alphabet="ACGT", min_size=2, max_size=12))
def test_c6_rc_involution(x):
    from stemcode.alphabet import reverse_complement

    assert str(reverse_complement(reverse_complement(x))) == x
    assert str(reverse_complement(x)) == brute_rc(x)


@PROPS
@given(st.sampled_from([3, 5, 7, 9, 11]), wc_tables())
def test_c6_repetition_code_bound(n, w):
    code = construct_repetition_code(n)
    assert code_min_distance(w, code) >= (n - 1) * min_weight(w) - 1e-9


# criterion 7: solver against an independent random-search oracle

def test_c7_oracle_equivalence():
    rng = np.random.default_rng(2024)
    tables = [random_wc_table(rng) for _ in range(50)]
    ours = [maximize_critical(w) for w in tables]
    best, _ = random_search_critical(np.array([w.flat for w in tables]), seed=7)
    t = np.array([r.t_value for r in ours])
    assert np.abs(t - best).max() <= 1e-4
    for r in ours:
        p = r.optimum.p
        assert p.min() >= 0
        assert abs(p.sum() - 1) <= 1e-12
        assert r.marginal_residual <= MARGINAL_ATOL
        assert r.pg_residual <= 1e-9


# criterion 8: Markov ensemble frequencies under the Unified1998 reference model

def test_c8_markov_frequencies():
    target = project_distribution(REFERENCE_P["Unified1998"])
    model = conditional_model(target)
    # 1000 strands of length 101 -> 1e5 stems
    codes = sample_strands(model, 101, 1000, seed=3)
    direct = stem_frequencies(codes)
    rc = stem_frequencies(reverse_complement_codes(codes))
    ref = np.array(REFERENCE_P["Unified1998"])
    assert np.abs(direct - ref).max() <= 0.01
    assert np.abs(rc - ref).max() <= 0.01


# criterion 9: documented discrepancy

def test_c9_unified_repetition_distance():
    # Direct computation gives 2 * (0.88 + 0.58) = 2.92, attained at AT/TA.
    # The published value for this code is 2t = 4, which only holds for unit
    # weights; this is a recorded discrepancy.
    d = code_min_distance(load_builtin("Unified1998"), construct_repetition_code(5))
    assert d == pytest.approx(2.92, abs=1e-9)
    assert d != pytest.approx(4.0)

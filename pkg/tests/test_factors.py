import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelwords.abelian import spectrum_size
from abelwords.factors import (
    factor_complexity_profile,
    factor_spectrum,
    right_special_factors,
    right_special_in,
    tribonacci_central_check,
    tribonacci_central_checks,
)
from abelwords.wordgen import Literal, PrefixBuffer, as_letters, format_word, materialize, parse_spec

import oracles


def test_thue_morse_factor_complexity():
    tm = oracles.thue_morse(2**12)
    brute = [len(oracles.factors(tm, n)) for n in range(1, 5)]
    assert brute == [2, 4, 6, 10]
    assert factor_complexity_profile("tm", 4).values == [2, 4, 6, 10]


def test_tribonacci_factor_complexity():
    t = oracles.tribonacci(2**12)
    brute = [len(oracles.factors(t, n)) for n in range(1, 6)]
    assert brute == [3, 5, 7, 9, 11]
    assert factor_complexity_profile("tribonacci", 5).values == [3, 5, 7, 9, 11]


def test_periodic_factor_complexity():
    assert factor_complexity_profile("up(,01)", 3).value(3) == 2


def test_factor_spectrum_bounds():
    buf = materialize(parse_spec("tribonacci"), 500)
    for n in range(1, 40):
        spectrum = factor_spectrum(buf, n)
        assert 1 <= len(spectrum) <= min(3**n, buf.length - n + 1)
        assert spectrum_size(buf, n) <= len(spectrum)


@pytest.mark.parametrize("n", range(0, 31))
def test_tribonacci_single_right_special(n):
    special = right_special_factors("tribonacci", n)
    assert len(special) == 1
    assert list(special.values()) == [frozenset({0, 1, 2})]
    t = oracles.tribonacci(20000)
    assert {format_word(u) for u in special} == set(oracles.right_special(t, n))


@pytest.mark.parametrize("n", range(0, 31))
def test_fibonacci_single_right_special(n):
    special = right_special_factors("fibonacci", n)
    brute = oracles.right_special(oracles.fibonacci(5000), n)
    assert len(brute) == 1 and len(special) == 1
    assert {format_word(u): {str(a) for a in e} for u, e in special.items()} == brute


def test_periodic_has_no_right_special():
    assert right_special_factors("up(,01)", 2) == {}


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="012", min_size=1, max_size=150), st.integers(0, 20))
def test_right_special_matches_brute_force(w, n):
    if n >= len(w):
        return
    letters = as_letters(w)
    buf = PrefixBuffer(letters, Literal(letters), 3)
    found = {format_word(u): {str(a) for a in e} for u, e in right_special_in(buf, n).items()}
    assert found == oracles.right_special(w, n)


def test_special_extensions_are_factors():
    buf = materialize(parse_spec("tribonacci"), 4000)
    for n in range(1, 25):
        spectrum = factor_spectrum(buf, n + 1).factors
        for u, ext in right_special_in(buf, n).items():
            assert all(u + bytes([a]) in spectrum for a in ext)


def test_central_n1():
    r = tribonacci_central_check(1)
    assert r.special_factor == b""
    assert set(r.central) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)} == set(r.spectrum)
    assert r.ok and r.verified


def test_central_n30():
    r = tribonacci_central_check(30)
    assert len(r.spectrum) == 5
    assert r.central_included and r.ok and r.verified


def test_central_n3914():
    r = tribonacci_central_check(3914)
    assert len(r.spectrum) == 7
    assert r.ok and r.verified


def test_central_range_properties():
    reports = tribonacci_central_checks(300)
    for n, r in enumerate(reports, 1):
        assert r.n == n and r.verified
        assert 3 <= len(r.spectrum) <= 7
        assert r.central_included
        assert r.max_pairwise_norm <= 2
        assert sum(r.central[0]) == n


def test_central_report_json():
    data = tribonacci_central_check(4).to_json()
    assert data["special_factor"] == "010"
    assert data["central"] == [[2, 1, 1], [2, 2, 0], [3, 1, 0]]
    assert all(sum(v) == 4 for v in data["spectrum"])
    assert data["central_included"] is True

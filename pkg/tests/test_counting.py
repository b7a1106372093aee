import json

import pytest
from hypothesis import given, settings, strategies as st

from palrich.counting import (
    balanced_oracle_table,
    count_rich,
    count_rich_naive,
    enumerate_balanced,
    rich_table,
    sturmian_count,
    sturmian_palindrome_count,
    sturmian_palindrome_enumeration_oracle,
    sturmian_table,
    totient,
    verify_c_identity,
)
from palrich.errors import OutOfRange, TooLarge, UnsupportedAlphabet

from oracles import is_balanced_naive, totient_gcd_sweep


def test_totient_examples():
    assert totient(1) == 1
    assert totient(7) == 6
    assert totient(12) == 4
    with pytest.raises(OutOfRange):
        totient(0)


@given(st.integers(1, 4000))
@settings(max_examples=80)
def test_totient_matches_gcd_sweep(n):
    assert totient(n) == totient_gcd_sweep(n)


def test_sturmian_count_examples():
    assert sturmian_count(0) == 1
    assert sturmian_count(2) == 4
    assert sturmian_count(4) == 14
    assert sturmian_count(5) == 24


def test_sturmian_palindrome_count_examples():
    assert sturmian_palindrome_count(0) == 1
    assert sturmian_palindrome_count(2) == 2
    assert sturmian_palindrome_count(4) == 4
    assert sturmian_palindrome_count(5) == 8


def test_enumerate_balanced_examples():
    assert [w.text for w in enumerate_balanced(2)] == ["aa", "ab", "ba", "bb"]
    four = {w.text for w in enumerate_balanced(4)}
    assert len(four) == 14
    assert "aabb" not in four and "bbaa" not in four
    assert len(enumerate_balanced(0)) == 1
    with pytest.raises(TooLarge):
        enumerate_balanced(23)


def test_enumerated_words_are_balanced_and_complete():
    from itertools import product

    for n in range(9):
        got = {w.text for w in enumerate_balanced(n)}
        expected = {
            "".join(p)
            for p in product("ab", repeat=n)
            if is_balanced_naive("".join(p))
        }
        assert got == expected
        assert len(got) == sturmian_count(n)


def test_balance_is_hereditary():
    for w in enumerate_balanced(10):
        text = w.text
        for i in range(len(text)):
            for j in range(i, len(text) + 1):
                assert is_balanced_naive(text[i:j])


def test_palindrome_oracle_matches_formula():
    for n in range(15):
        assert sturmian_palindrome_enumeration_oracle(n) == sturmian_palindrome_count(n)


def test_verify_c_identity_examples():
    assert sturmian_palindrome_count(2) + sturmian_palindrome_count(3) == 6
    assert sturmian_count(3) - sturmian_count(2) + 2 == 6
    assert sturmian_palindrome_count(4) + sturmian_palindrome_count(5) == 12
    assert sturmian_count(5) - sturmian_count(4) + 2 == 12
    assert verify_c_identity(200)


def test_count_rich_small():
    assert count_rich(2, 1) == 2
    assert count_rich(2, 3) == 8
    assert count_rich(2, 8) == 252  # first length with non-rich binary words
    assert count_rich(2, 7) == 128


def test_count_rich_matches_naive_sweep():
    for n in range(13):
        assert count_rich(2, n) == count_rich_naive(2, n)
    for n in range(9):
        assert count_rich(3, n) == count_rich_naive(3, n)


def test_count_rich_budgets():
    with pytest.raises(UnsupportedAlphabet):
        count_rich(5, 4)
    with pytest.raises(TooLarge):
        count_rich(2, 25)


def test_rich_fraction_monotone_non_increasing():
    counts = [count_rich(2, n) for n in range(15)]
    fractions = [c / 2**n for n, c in enumerate(counts)]
    assert all(b <= a for a, b in zip(fractions, fractions[1:]))


def test_tables_and_serialization():
    tbl = sturmian_table(6)
    csv_text = tbl.to_csv()
    assert csv_text.splitlines()[0] == "n,count,provenance"
    assert len(csv_text.splitlines()) == 8
    assert csv_text.endswith("\n") and "\r" not in csv_text
    payload = json.loads(tbl.to_json())
    assert payload["kind"] == "sturmian"
    assert payload["values"][4]["count"] == 14
    assert balanced_oracle_table(6).values == tbl.values
    rt = rich_table(2, 6)
    assert rt.provenance == "enumeration"

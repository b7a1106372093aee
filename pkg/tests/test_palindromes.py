import pytest
from hypothesis import given, settings, strategies as st

from palrich.errors import FactorAbsent, OutOfRange, PalindromicInput
from palrich.factors import build_index, stabilized_prefix
from palrich.palindromes import (
    Eertree,
    build_eertree,
    check_alternation,
    check_v2reverse,
    is_rich_by_count,
    is_rich_by_returns,
    is_rich_incremental,
    longest_palindromic_suffix,
    palindromic_complexity,
)
from palrich.words import Morphism, Word, fixed_point

from oracles import (
    all_words,
    distinct_palindromes_including_empty,
    is_rich_naive,
    palindromic_substrings,
)

FIB = Morphism.parse("a->ab,b->a")
TM = Morphism.parse("a->ab,b->ba")


def test_build_eertree_examples():
    t = build_eertree(Word.parse("abca"))
    assert t.node_count == 3
    assert [bool(c) for c in t.created_at] == [True, True, True, False]

    t = build_eertree(Word.parse("aabaa"))
    assert t.node_count == 5
    pals = {t.alphabet.decode(t.palindrome_bytes(n)) for n in range(2, 7)}
    assert pals == {"a", "aa", "b", "aba", "aabaa"}

    assert build_eertree(Word.parse("a", None)[:0]).node_count == 0


def test_palindromic_complexity_fibonacci():
    sp = stabilized_prefix(lambda l: fixed_point(FIB, "a", l), 10)
    t = build_eertree(sp.word)
    assert palindromic_complexity(t, 6) == 1
    assert palindromic_complexity(t, 7) == 2
    assert palindromic_complexity(t, 0) == 1


def test_palindromic_complexity_thue_morse_odd_gap():
    w = fixed_point(TM, "a", 512)
    t = build_eertree(w)
    expected = sum(1 for p in palindromic_substrings(w.text) if len(p) == 7)
    assert palindromic_complexity(t, 7) == expected == 0
    with pytest.raises(OutOfRange):
        palindromic_complexity(t, 513)


def test_longest_palindromic_suffix_examples():
    t = build_eertree(Word.parse("abca"))
    assert longest_palindromic_suffix(t, 4).text == "a"
    t = build_eertree(Word.parse("aabaa"))
    assert longest_palindromic_suffix(t, 5).text == "aabaa"
    t = build_eertree(Word.parse("ab"))
    assert longest_palindromic_suffix(t, 2).text == "b"
    with pytest.raises(OutOfRange):
        longest_palindromic_suffix(t, 3)


def test_is_rich_incremental_examples():
    rep = is_rich_incremental(Word.parse("abca"))
    assert not rep.rich
    assert rep.first_violation_prefix == 4
    assert rep.defect == 1
    assert is_rich_incremental(Word.parse("abbbb")).rich
    assert is_rich_incremental(Word.parse("aabaabbaabaabbb")).rich


def test_is_rich_by_returns_examples():
    rep = is_rich_by_returns(Word.parse("abca"))
    assert not rep.rich
    assert rep.witness[0].text == "a"
    assert rep.witness[1].text == "abca"
    assert is_rich_by_returns(Word.parse("aababaa")).rich
    assert is_rich_by_returns(Word.parse("aa")).rich


def test_is_rich_by_count_examples():
    assert is_rich_by_count(Word.parse("abc"))
    assert not is_rich_by_count(Word.parse("abca"))
    assert is_rich_by_count(Word.parse("aabaa"))


def test_richness_witness_is_genuine():
    for text in ("abca", "abab", "aabbaa", "abcba" * 3, "abbabaabbaababba"):
        rep = is_rich_incremental(Word.parse(text))
        if rep.rich:
            continue
        p, r = rep.witness
        assert r.text in text
        assert r.text.startswith(p.text) and r.text.endswith(p.text)
        assert not r.is_palindrome()
        hits = [
            i
            for i in range(len(r.text) - len(p.text) + 1)
            if r.text[i : i + len(p.text)] == p.text
        ]
        assert len(hits) == 2


def test_eertree_push_pop_roundtrip():
    t = Eertree(Word.parse("ab").alphabet)
    word = "abaabbaba"
    snapshots = []
    for ch in word:
        snapshots.append((t.node_count, bytes(t.data)))
        t.push(0 if ch == "a" else 1)
    for _ in range(len(word)):
        t.pop()
        expect_count, expect_data = snapshots.pop()
        assert (t.node_count, bytes(t.data)) == (expect_count, expect_data)
    assert t.node_count == 0 and len(t.data) == 0


@given(st.text(alphabet="ab", max_size=60))
@settings(max_examples=120)
def test_eertree_counts_match_substring_oracle(text):
    w = Word.parse(text, Word.parse("ab").alphabet)
    t = build_eertree(w)
    assert t.node_count + 1 == distinct_palindromes_including_empty(text)
    by_len = t.nodes_by_length()
    for n in range(1, len(text) + 1):
        expected = sum(1 for p in palindromic_substrings(text) if len(p) == n)
        assert by_len.get(n, 0) == expected


@given(st.text(alphabet="ab", max_size=40))
@settings(max_examples=120)
def test_defect_monotone_in_prefix_length(text):
    w = Word.parse(text, Word.parse("ab").alphabet)
    defects = [is_rich_incremental(w[:i]).defect for i in range(len(w) + 1)]
    assert all(b - a in (0, 1) for a, b in zip(defects, defects[1:]))


def test_three_checkers_agree_on_small_words():
    for text in all_words("ab", 9):
        w = Word.parse(text, Word.parse("ab").alphabet)
        naive = is_rich_naive(text)
        assert is_rich_incremental(w).rich == naive
        assert is_rich_by_returns(w).rich == naive
        assert is_rich_by_count(w) == naive


def test_droubay_justin_pirillo_bound():
    for text in all_words("abc", 6):
        assert distinct_palindromes_including_empty(text) <= len(text) + 1


def test_check_v2reverse_examples():
    sp = stabilized_prefix(lambda l: fixed_point(FIB, "a", l), 10)
    ok, witness = check_v2reverse(sp.index, Word.parse("ab", sp.word.alphabet))
    assert ok and witness is None

    idx = build_index(Word.parse("abca"), 2)
    ok, _ = check_v2reverse(idx, Word.parse("ab", idx.alphabet))
    assert ok  # vacuous: no occurrence of the reversal
    ok, witness = check_v2reverse(idx, Word.parse("a", idx.alphabet))
    assert not ok and witness.text == "abca"

    with pytest.raises(FactorAbsent):
        check_v2reverse(idx, Word.parse("cb", idx.alphabet))


def test_check_v2reverse_palindromic_input_is_return_check():
    idx = build_index(Word.parse("aabaaab"), 3)
    ok, witness = check_v2reverse(idx, Word.parse("aa", idx.alphabet))
    # complete returns to aa: aabaa (pal) and aaa (pal) -> depends on word
    from oracles import complete_returns_naive

    expected = all(
        r == r[::-1] for r in complete_returns_naive("aabaaab", "aa")
    )
    assert ok == expected


def test_check_alternation_examples():
    sp = stabilized_prefix(lambda l: fixed_point(FIB, "a", l), 10)
    assert check_alternation(sp.index, Word.parse("ab", sp.word.alphabet))

    idx = build_index(Word.parse("abab"), 2)
    assert check_alternation(idx, Word.parse("ab", idx.alphabet))

    idx = build_index(Word.parse("aabab"), 3)
    assert check_alternation(idx, Word.parse("aab", idx.alphabet))

    with pytest.raises(PalindromicInput):
        check_alternation(idx, Word.parse("aba", idx.alphabet))
    with pytest.raises(FactorAbsent):
        check_alternation(idx, Word.parse("bba", idx.alphabet))


def test_alternation_detects_violations():
    idx = build_index(Word.parse("ababab"), 2)
    assert check_alternation(idx, Word.parse("ab", idx.alphabet))
    idx = build_index(Word.parse("abcab"), 3)
    # ab occurs twice, ba never: two same-kind events in a row
    assert not check_alternation(idx, Word.parse("ab", idx.alphabet))

import pytest

from palrich.errors import PalrichError
from palrich.generators import (
    REGISTRY,
    episturmian_prefix,
    family_block,
    get_family,
    psi_morphism,
)
from palrich.palindromes import is_rich_incremental
from palrich.words import Word


def test_registry_names():
    assert set(REGISTRY) == {
        "fibonacci",
        "tribonacci",
        "thue-morse",
        "cassaigne-aab",
        "quadratic-abab",
        "psi-of-fibonacci",
        "periodic",
        "s-word",
        "episturmian",
        "morphic",
    }
    with pytest.raises(PalrichError):
        get_family("nope")


def test_known_prefixes():
    assert get_family("fibonacci").produce(13).text == "abaababaabaab"
    assert get_family("cassaigne-aab").produce(15).text == "aabaabbaabaabbb"
    assert get_family("quadratic-abab").produce(12).text == "ababbababbba"
    assert get_family("s-word").produce(10).text == "bcaabcaaab"
    assert get_family("thue-morse").produce(8).text == "abbabaab"
    assert get_family("periodic", block="aabaabab").produce(10).text == "aabaababaa"
    assert get_family("tribonacci").produce(7).text == "abacaba"


def test_psi_of_fibonacci_prefix():
    fam = get_family("psi-of-fibonacci", k=0)
    # f = a b a a b ... so the image starts psi(a) psi(b) psi(a) psi(a)
    expected = "aabaabab" + "bab" + "aabaabab" + "aabaabab"
    assert fam.produce(len(expected)).text == expected


def test_family_block_values():
    assert family_block(0).text == "aabaabab"
    assert family_block(1).text == "aabaabaabab"
    assert family_block(2).text == "aabaabaabaabab"
    assert psi_morphism(1).image_of("a").text == "aabaabaabab"
    assert psi_morphism(0).image_of("b").text == "bab"


def test_exact_lengths():
    for name in REGISTRY:
        fam = get_family(name)
        for length in (1, 2, 17, 64):
            assert len(fam.produce(length)) == length


def test_episturmian_prefix_matches_slow_route():
    from palrich.words import episturmian_word

    d = Word.parse("abcabcabcabc")
    assert episturmian_prefix("abc", 40).text == episturmian_word(d, 40).text


def test_rich_families_have_rich_prefixes():
    for name, kw in [
        ("fibonacci", {}),
        ("tribonacci", {}),
        ("cassaigne-aab", {}),
        ("quadratic-abab", {}),
        ("psi-of-fibonacci", {"k": 1}),
        ("periodic", {"block": family_block(2).text}),
        ("episturmian", {"directive": "ab"}),
        ("morphic", {"morphism": "a->aba,b->bb"}),
    ]:
        fam = get_family(name, **kw)
        assert is_rich_incremental(fam.produce(600)).rich, name


def test_exact_sets_present_for_morphic_families():
    for name in ("fibonacci", "thue-morse", "cassaigne-aab", "quadratic-abab",
                 "psi-of-fibonacci", "periodic", "morphic"):
        assert get_family(name).exact_sets is not None, name
    for name in ("tribonacci", "s-word", "episturmian"):
        assert get_family(name).exact_sets is None, name


def test_producers_are_prefix_stable():
    cases = [
        ("fibonacci", {}),
        ("tribonacci", {}),
        ("thue-morse", {}),
        ("cassaigne-aab", {}),
        ("quadratic-abab", {}),
        ("psi-of-fibonacci", {"k": 1}),
        ("periodic", {"block": "aabaabab"}),
        ("s-word", {}),
        ("episturmian", {"directive": "abb"}),
        ("morphic", {"morphism": "a->aba,b->bb"}),
    ]
    for name, kw in cases:
        fam = get_family(name, **kw)
        for length in (3, 10, 40):
            assert fam.produce(2 * length).text.startswith(
                fam.produce(length).text
            ), name

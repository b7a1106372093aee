"""Named word generators: every family used in the analysis experiments.

Each registry entry packages a prefix producer with what is known about the
family (richness, periodicity, reversal closure) and, for morphic families,
an exact factor-set construction that sidesteps prefix scanning entirely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import PalrichError
from .factors import (
    image_factor_sets,
    morphic_factor_sets,
    periodic_factor_sets,
)
from .palindromes import Eertree
from .words import (
    Alphabet,
    BINARY,
    Morphism,
    Word,
    fixed_point,
    periodic_word,
    s_word,
)

FIBONACCI = Morphism.parse("a->ab,b->a")
THUE_MORSE = Morphism.parse("a->ab,b->ba")
CASSAIGNE_AAB = Morphism.parse("a->aab,b->b")
QUADRATIC_ABAB = Morphism.parse("a->abab,b->b")


@dataclass(frozen=True)
class WordFamily:
    """A named infinite word with a prefix producer and known properties."""

    name: str
    summary: str
    produce: Callable[[int], Word]
    rich_expected: bool | None = None
    periodic_hint: bool = False
    closure_expected: bool | None = None
    exact_sets: Callable[[int], list[frozenset[bytes]]] | None = None
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.params:
            inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
            return f"{self.name}({inner})"
        return self.name

    def sample(self, length: int) -> Word:
        return self.produce(length)


def _exact_from_morphism(m: Morphism, seed: str):
    def build(depth: int):
        return morphic_factor_sets(m, seed, depth)

    return build


def episturmian_prefix(directive: str, length: int, cycle: bool = True) -> Word:
    """Prefix of the iterated palindromic closure along a directive.

    With ``cycle`` the directive repeats forever.  The closure is computed
    incrementally on an eertree, so each appended letter costs amortized
    constant work and long prefixes stay cheap.
    """
    alphabet = Alphabet(sorted(set(directive)))
    if length == 0:
        return Word(alphabet)
    tree = Eertree(alphabet)
    steps = 0
    while len(tree.data) < length:
        if steps >= len(directive) and not cycle:
            from .errors import DirectiveExhausted

            raise DirectiveExhausted(
                f"directive produced only {len(tree.data)} of {length} letters"
            )
        tree.push(alphabet.index(directive[steps % len(directive)]))
        steps += 1
        gap = len(tree.data) - tree.last_suffix_length()
        for b in bytes(tree.data[:gap])[::-1]:
            tree.push(b)
    return Word(alphabet, bytes(tree.data[:length]))


def family_block(k: int) -> Word:
    """Block of the rich periodic family: k+1 copies of aab, then aabab.

    k = 0 gives aabaabab.  This grouping keeps both the periodic repetition
    and its substitution image of the Fibonacci word rich for every k; with
    a plain b-run in the middle the image stops being rich at k = 2 (the
    factor bb then has a non-palindromic complete return).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    return Word.parse("aab" * (k + 1) + "aabab", BINARY)


def psi_morphism(k: int) -> Morphism:
    """The substitution a -> (aab)^{k+1} aabab, b -> bab."""
    return Morphism.parse(f"a->{family_block(k).text},b->bab")


def _psi_of_fibonacci_producer(k: int) -> Callable[[int], Word]:
    psi = psi_morphism(k)

    def produce(length: int) -> Word:
        base = fixed_point(FIBONACCI, "a", max(length, 8))
        return psi(base)[:length]

    return produce


def _psi_of_fibonacci_sets(k: int):
    psi = psi_morphism(k)

    def build(depth: int):
        base = morphic_factor_sets(FIBONACCI, "a", depth)
        return image_factor_sets(psi, base[depth], depth)

    return build


def _fixed_point_producer(m: Morphism, seed: str) -> Callable[[int], Word]:
    def produce(length: int) -> Word:
        return fixed_point(m, seed, length)

    return produce


def fibonacci(**_) -> WordFamily:
    return WordFamily(
        "fibonacci",
        "fixed point of a->ab, b->a (the Fibonacci word)",
        _fixed_point_producer(FIBONACCI, "a"),
        rich_expected=True,
        closure_expected=True,
        exact_sets=_exact_from_morphism(FIBONACCI, "a"),
    )


def tribonacci(**_) -> WordFamily:
    return WordFamily(
        "tribonacci",
        "iterated palindromic closure along (abc)*",
        lambda length: episturmian_prefix("abc", length),
        rich_expected=True,
        closure_expected=True,
    )


def thue_morse(**_) -> WordFamily:
    return WordFamily(
        "thue-morse",
        "fixed point of a->ab, b->ba",
        _fixed_point_producer(THUE_MORSE, "a"),
        rich_expected=False,
        closure_expected=True,
        exact_sets=_exact_from_morphism(THUE_MORSE, "a"),
    )


def cassaigne_aab(**_) -> WordFamily:
    return WordFamily(
        "cassaigne-aab",
        "fixed point of a->aab, b->b (complexity ~ n^2/2)",
        _fixed_point_producer(CASSAIGNE_AAB, "a"),
        rich_expected=True,
        closure_expected=True,
        exact_sets=_exact_from_morphism(CASSAIGNE_AAB, "a"),
    )


def quadratic_abab(**_) -> WordFamily:
    return WordFamily(
        "quadratic-abab",
        "fixed point of a->abab, b->b (quadratic complexity)",
        _fixed_point_producer(QUADRATIC_ABAB, "a"),
        rich_expected=True,
        closure_expected=True,
        exact_sets=_exact_from_morphism(QUADRATIC_ABAB, "a"),
    )


def psi_of_fibonacci(k: int = 0, **_) -> WordFamily:
    return WordFamily(
        "psi-of-fibonacci",
        "image of the Fibonacci word under a->(aab)^{k+1} aabab, b->bab",
        _psi_of_fibonacci_producer(k),
        rich_expected=True,
        closure_expected=True,
        exact_sets=_psi_of_fibonacci_sets(k),
        params={"k": k},
    )


def periodic(block: str = "aabaabab", **_) -> WordFamily:
    word = Word.parse(block)
    return WordFamily(
        "periodic",
        f"the block {block!r} repeated forever",
        lambda length: periodic_word(word, length),
        periodic_hint=True,
        exact_sets=lambda depth: periodic_factor_sets(word, depth),
        params={"block": block},
    )


def s_word_family(**_) -> WordFamily:
    return WordFamily(
        "s-word",
        "bc a^2 bc a^3 ... (recurrent, not closed under reversal)",
        s_word,
        rich_expected=False,
        closure_expected=False,
    )


def episturmian(directive: str = "ab", **_) -> WordFamily:
    return WordFamily(
        "episturmian",
        f"iterated palindromic closure along ({directive})*",
        lambda length: episturmian_prefix(directive, length),
        rich_expected=True,
        closure_expected=True,
        params={"directive": directive},
    )


def morphic(morphism: str = "a->ab,b->a", seed: str = "a", **_) -> WordFamily:
    m = Morphism.parse(morphism)
    return WordFamily(
        "morphic",
        f"fixed point of {morphism} from seed {seed!r}",
        _fixed_point_producer(m, seed),
        exact_sets=_exact_from_morphism(m, seed),
        params={"morphism": morphism, "seed": seed},
    )


REGISTRY: dict[str, Callable[..., WordFamily]] = {
    "fibonacci": fibonacci,
    "tribonacci": tribonacci,
    "thue-morse": thue_morse,
    "cassaigne-aab": cassaigne_aab,
    "quadratic-abab": quadratic_abab,
    "psi-of-fibonacci": psi_of_fibonacci,
    "periodic": periodic,
    "s-word": s_word_family,
    "episturmian": episturmian,
    "morphic": morphic,
}


def get_family(name: str, **params) -> WordFamily:
    try:
        factory = REGISTRY[name]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise PalrichError(f"unknown generator {name!r}; known: {known}") from None
    return factory(**params)

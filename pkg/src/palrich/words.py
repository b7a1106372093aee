"""Finite words over small indexed alphabets, plus the word generators.

Letters live as dense small-integer indices packed into ``bytes``; printable
names exist only on the :class:`Alphabet` boundary.  Everything here is a pure
function of its arguments: morphism fixed points, periodic words, the
bc a^2 bc a^3 ... word, palindromic closure, and iterated palindromic closure
(episturmian prefixes).
"""

from __future__ import annotations

import string
from typing import Iterable

from .errors import (
    DirectiveExhausted,
    EmptyBlock,
    ErasingMorphism,
    ImageTooSlow,
    NotProlongable,
)

_LOWER = set(string.ascii_lowercase)


class Alphabet:
    """An ordered set of 1..26 distinct letters, each mapped to its index."""

    __slots__ = ("letters", "_index")

    def __init__(self, letters: Iterable[str]):
        letters = tuple(letters)
        if not 1 <= len(letters) <= 26:
            raise ValueError("alphabet size must be between 1 and 26")
        if len(set(letters)) != len(letters):
            raise ValueError("alphabet letters must be distinct")
        for ch in letters:
            if len(ch) != 1 or ch not in _LOWER:
                raise ValueError(f"letters must be single characters a-z, got {ch!r}")
        self.letters = letters
        self._index = {ch: i for i, ch in enumerate(letters)}

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise ValueError(f"letter {letter!r} not in alphabet {self.letters}") from None

    def encode(self, text: str) -> bytes:
        return bytes(self.index(ch) for ch in text)

    def decode(self, data: bytes) -> str:
        letters = self.letters
        return "".join(letters[b] for b in data)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Alphabet({''.join(self.letters)!r})"


BINARY = Alphabet("ab")
TERNARY = Alphabet("abc")


class Word:
    """An immutable finite word: an alphabet plus a byte string of indices."""

    __slots__ = ("alphabet", "data")

    def __init__(self, alphabet: Alphabet, data: bytes = b""):
        data = bytes(data)
        if data and max(data) >= alphabet.size:
            raise ValueError("letter index out of range for alphabet")
        self.alphabet = alphabet
        self.data = data

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "Word":
        """Parse an ASCII literal, inferring the alphabet when not supplied."""
        if alphabet is None:
            if not text:
                raise ValueError("cannot infer an alphabet from the empty literal")
            alphabet = Alphabet(sorted(set(text)))
        return cls(alphabet, alphabet.encode(text))

    @property
    def text(self) -> str:
        return self.alphabet.decode(self.data)

    def __len__(self):
        return len(self.data)

    def __bool__(self):
        return bool(self.data)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.alphabet, self.data[item])
        return self.data[item]

    def __add__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.data + other.data)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.data == other.data
            and self.alphabet == other.alphabet
        )

    def __lt__(self, other: "Word"):
        return self.data < other.data

    def __hash__(self):
        return hash((self.alphabet, self.data))

    def __repr__(self):
        return f"Word({self.text!r})"

    def reversed(self) -> "Word":
        return Word(self.alphabet, self.data[::-1])

    def is_palindrome(self) -> bool:
        return self.data == self.data[::-1]


def reverse(w: Word) -> Word:
    """Return x_m..x_1 for the word x_1..x_m."""
    return w.reversed()


def is_palindrome(w: Word) -> bool:
    """True iff w equals its reversal; the empty word counts."""
    return w.is_palindrome()


class Morphism:
    """A non-erasing substitution: one non-empty image word per letter."""

    __slots__ = ("alphabet", "images")

    def __init__(self, alphabet: Alphabet, images: dict[str, str]):
        missing = [ch for ch in alphabet.letters if ch not in images]
        if missing:
            raise ValueError(f"missing images for letters {missing}")
        encoded = []
        for ch in alphabet.letters:
            img = alphabet.encode(images[ch])
            if not img:
                raise ErasingMorphism(f"image of {ch!r} is empty")
            encoded.append(img)
        self.alphabet = alphabet
        self.images = tuple(encoded)

    @classmethod
    def parse(cls, spec: str, alphabet: Alphabet | None = None) -> "Morphism":
        """Parse the textual form ``"a->ab,b->a"``."""
        rules: dict[str, str] = {}
        for part in spec.split(","):
            part = part.strip()
            if not part:
                continue
            lhs, sep, rhs = part.partition("->")
            lhs, rhs = lhs.strip(), rhs.strip()
            if not sep or len(lhs) != 1 or not rhs:
                raise ValueError(f"bad morphism rule {part!r}")
            if lhs in rules:
                raise ValueError(f"duplicate rule for {lhs!r}")
            rules[lhs] = rhs
        if not rules:
            raise ValueError("empty morphism specification")
        if alphabet is None:
            seen = set(rules)
            for rhs in rules.values():
                seen.update(rhs)
            alphabet = Alphabet(sorted(seen))
        for ch in alphabet.letters:
            rules.setdefault(ch, ch)
        return cls(alphabet, rules)

    def apply_bytes(self, data: bytes) -> bytes:
        images = self.images
        return b"".join(images[b] for b in data)

    def __call__(self, w: Word) -> Word:
        return morphic_image(self, w)

    def image_of(self, letter: str) -> Word:
        return Word(self.alphabet, self.images[self.alphabet.index(letter)])

    def __repr__(self):
        rules = ",".join(
            f"{ch}->{self.alphabet.decode(img)}"
            for ch, img in zip(self.alphabet.letters, self.images)
        )
        return f"Morphism({rules!r})"


def morphic_image(m: Morphism, w: Word) -> Word:
    """Apply the morphism letterwise and concatenate the images."""
    if w.alphabet != m.alphabet:
        raise ValueError("word alphabet does not match morphism alphabet")
    return Word(m.alphabet, m.apply_bytes(w.data))


def fixed_point(m: Morphism, seed: str, length: int) -> Word:
    """Length-``length`` prefix of the fixed point of ``m`` starting at ``seed``.

    Requires m(seed) to start with seed and have length at least 2, so the
    iterates are prefixes of one another.  Iteration happens on the current
    prefix only, truncated to ``length``; full iterates are never kept.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    s = m.alphabet.index(seed)
    img = m.images[s]
    if len(img) < 2 or img[0] != s:
        raise NotProlongable(
            f"image of seed {seed!r} must start with the seed and have length >= 2"
        )
    prefix = bytes([s])
    while len(prefix) < length:
        grown = m.apply_bytes(prefix)[:length]
        if len(grown) <= len(prefix):
            # Unreachable for non-erasing prolongable morphisms; kept as a guard.
            raise ImageTooSlow("iteration stopped growing")
        prefix = grown
    return Word(m.alphabet, prefix[:length])


def periodic_word(block: Word, length: int) -> Word:
    """Prefix of length ``length`` of block repeated forever."""
    if len(block) == 0:
        raise EmptyBlock("the repeating block must be non-empty")
    reps = length // len(block) + 1
    return Word(block.alphabet, (block.data * reps)[:length])


def s_word(length: int) -> Word:
    """Prefix of the recurrent word bc a^2 bc a^3 bc a^2 bc a^4 ...

    Built from the recursion s_1 = bc, s_n = s_{n-1} a^n s_{n-1}, unfolded
    with an explicit emission stack so only ``length`` letters materialize.
    """
    alphabet = TERNARY
    if length < 0:
        raise ValueError("length must be non-negative")
    out = bytearray()
    a, b, c = 0, 1, 2
    # Emission tokens: ("s", n) expands to s_n, ("a", n) emits n letters a.
    level = 1
    while True:
        stack: list[tuple[str, int]] = [("s", level)]
        out.clear()
        while stack and len(out) < length:
            kind, n = stack.pop()
            if kind == "a":
                out.extend([a] * min(n, length - len(out)))
            elif n == 1:
                out.extend([b, c])
            else:
                stack.extend([("s", n - 1), ("a", n), ("s", n - 1)][::-1])
        if len(out) >= length:
            return Word(alphabet, bytes(out[:length]))
        level += 1


def _longest_palindromic_suffix_length(data: bytes) -> int:
    # Scanned from the longest candidate down; comparisons are C-speed slices.
    for l in range(len(data), 0, -1):
        tail = data[len(data) - l :]
        if tail == tail[::-1]:
            return l
    return 0


def palindromic_closure(w: Word) -> Word:
    """The shortest palindrome having ``w`` as a prefix.

    Equals w followed by the reversal of what precedes the longest
    palindromic suffix of w.
    """
    data = w.data
    l = _longest_palindromic_suffix_length(data)
    return Word(w.alphabet, data + data[: len(data) - l][::-1])


def episturmian_word(directive: Word, length: int) -> Word:
    """Prefix of the iterated palindromic closure along ``directive``.

    u_0 is empty and u_{k+1} = palindromic_closure(u_k d_k); generation stops
    as soon as the current closure reaches ``length`` letters.  Raises
    DirectiveExhausted if the directive runs out first.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    u = Word(directive.alphabet)
    if length == 0:
        return u
    for letter_index in directive.data:
        u = palindromic_closure(Word(u.alphabet, u.data + bytes([letter_index])))
        if len(u) >= length:
            return u[:length]
    raise DirectiveExhausted(
        f"directive produced only {len(u)} of {length} requested letters"
    )


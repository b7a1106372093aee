"""Exact counting: totient sums, balanced-word oracles, rich-word tables.

The closed formulas count finite Sturmian words and Sturmian palindromes:

    c(n) = 1 + sum_{i=1..n} (n+1-i) phi(i)
    p(n) = 1 + sum_{i=0..ceil(n/2)-1} phi(n-2i)

Finite Sturmian words are realized for oracle purposes as balanced binary
words, checked by the obviously-correct per-length window sweep.  Rich words
have no known counting formula; ``count_rich`` enumerates them exactly with
a depth-first search pruned by the one-new-palindrome-per-letter property,
which is hereditary, so the pruning is sound.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import product

from .errors import OutOfRange, TooLarge, UnsupportedAlphabet
from .palindromes import Eertree
from .words import Alphabet, Word

BALANCED_BUDGET = 22
RICH_BUDGETS = {2: 24, 3: 18, 4: 14}


def totient(i: int) -> int:
    """Euler's phi via trial-division factorization.

    >>> totient(12)
    4
    """
    if i < 1:
        raise OutOfRange("totient is defined for positive integers")
    result = i
    n = i
    d = 2
    while d * d <= n:
        if n % d == 0:
            result -= result // d
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        result -= result // n
    return result


def sturmian_count(n: int) -> int:
    """Number of finite Sturmian (balanced binary) words of length n."""
    if n < 0:
        raise OutOfRange("length must be non-negative")
    return 1 + sum((n + 1 - i) * totient(i) for i in range(1, n + 1))


def sturmian_palindrome_count(n: int) -> int:
    """Number of Sturmian palindromes of length n; p(0) = 1 by convention.

    Evaluates both the unified totient sum and its even/odd split form and
    insists they agree.
    """
    if n < 0:
        raise OutOfRange("length must be non-negative")
    unified = 1 + sum(totient(n - 2 * i) for i in range((n + 1) // 2))
    if n % 2 == 0:
        split = 1 + sum(totient(2 * i) for i in range(1, n // 2 + 1))
    else:
        split = 1 + sum(totient(2 * i + 1) for i in range(n // 2 + 1))
    assert unified == split, f"split form disagrees at n={n}"
    return unified


def _is_balanced(data: bytes) -> bool:
    # Pairwise window check, one pass per length: balanced iff for every
    # length the a-counts of all windows differ by at most one.
    m = len(data)
    for l in range(1, m):
        ones = sum(1 for b in data[:l] if b == 0)
        lo = hi = ones
        for i in range(m - l):
            ones += (1 if data[i + l] == 0 else 0) - (1 if data[i] == 0 else 0)
            if ones < lo:
                lo = ones
            elif ones > hi:
                hi = ones
            if hi - lo > 1:
                return False
    return True


def enumerate_balanced(n: int) -> list[Word]:
    """All balanced binary words of length n, in lexicographic order.

    Depth-first with prefix pruning; prefixes of balanced words are
    balanced, so cutting unbalanced prefixes loses nothing.
    """
    if n < 0:
        raise OutOfRange("length must be non-negative")
    if n > BALANCED_BUDGET:
        raise TooLarge(f"balanced enumeration is budgeted to n <= {BALANCED_BUDGET}")
    alphabet = Alphabet("ab")
    out: list[Word] = []
    prefix = bytearray()

    def dfs():
        if len(prefix) == n:
            out.append(Word(alphabet, bytes(prefix)))
            return
        for c in (0, 1):
            prefix.append(c)
            if _is_balanced(bytes(prefix)):
                dfs()
            prefix.pop()

    if n == 0:
        return [Word(alphabet)]
    dfs()
    return out


def sturmian_palindrome_enumeration_oracle(n: int) -> int:
    """Count of balanced binary palindromes of length n, by enumeration."""
    return sum(1 for w in enumerate_balanced(n) if w.is_palindrome())


def verify_c_identity(n_max: int) -> bool:
    """p(2n) + p(2n+1) = c(2n+1) - c(2n) + 2 for all n up to n_max."""
    if n_max < 1:
        raise OutOfRange("n_max must be at least 1")
    for n in range(n_max + 1):
        lhs = sturmian_palindrome_count(2 * n) + sturmian_palindrome_count(2 * n + 1)
        rhs = sturmian_count(2 * n + 1) - sturmian_count(2 * n) + 2
        if lhs != rhs:
            return False
    return True


def count_rich(alphabet_size: int, n: int) -> int:
    """Exact number of rich words of length n over the given alphabet.

    Depth-first extension over an eertree with undo: a word is rich iff
    every prefix adds a new palindrome, so any extension that fails to
    create a node is cut immediately.  Richness is preserved by letter
    permutations, so the first letter is fixed and the count multiplied by
    the alphabet size.
    """
    if alphabet_size not in RICH_BUDGETS:
        raise UnsupportedAlphabet("rich-word counting supports alphabets of 2..4")
    if n < 0:
        raise OutOfRange("length must be non-negative")
    if n > RICH_BUDGETS[alphabet_size]:
        raise TooLarge(
            f"rich enumeration over {alphabet_size} letters is budgeted to "
            f"n <= {RICH_BUDGETS[alphabet_size]}"
        )
    if n == 0:
        return 1
    alphabet = Alphabet("abcd"[:alphabet_size])
    tree = Eertree(alphabet)
    total = 0

    def dfs(depth: int):
        nonlocal total
        if depth == n:
            total += 1
            return
        for c in range(alphabet_size):
            if tree.push(c):
                dfs(depth + 1)
            tree.pop()

    created = tree.push(0)
    assert created
    dfs(1)
    tree.pop()
    return total * alphabet_size


def count_rich_naive(alphabet_size: int, n: int) -> int:
    """Exhaustive sweep oracle for small n: count words with |w|+1 palindromes."""
    if alphabet_size not in RICH_BUDGETS:
        raise UnsupportedAlphabet("rich-word counting supports alphabets of 2..4")
    if n > 16:
        raise TooLarge("the naive sweep is budgeted to n <= 16")
    alphabet = Alphabet("abcd"[:alphabet_size])
    total = 0
    for letters in product(range(alphabet_size), repeat=n):
        tree = Eertree(alphabet)
        if all(tree.push(c) for c in letters):
            total += 1
    return total


@dataclass(frozen=True)
class CountTable:
    """A counting table keyed by length, with provenance."""

    kind: str  # sturmian | sturmian-palindrome | rich | balanced-oracle
    alphabet_size: int
    values: dict[int, int]
    provenance: str  # formula | enumeration

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "count", "provenance"])
        for n in sorted(self.values):
            writer.writerow([n, self.values[n], self.provenance])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "alphabet_size": self.alphabet_size,
            "provenance": self.provenance,
            "values": [
                {"n": n, "count": self.values[n]} for n in sorted(self.values)
            ],
        }
        return json.dumps(payload, indent=2) + "\n"


def sturmian_table(n_max: int) -> CountTable:
    return CountTable(
        "sturmian",
        2,
        {n: sturmian_count(n) for n in range(n_max + 1)},
        "formula",
    )


def sturmian_palindrome_table(n_max: int) -> CountTable:
    return CountTable(
        "sturmian-palindrome",
        2,
        {n: sturmian_palindrome_count(n) for n in range(n_max + 1)},
        "formula",
    )


def balanced_oracle_table(n_max: int) -> CountTable:
    return CountTable(
        "balanced-oracle",
        2,
        {n: len(enumerate_balanced(n)) for n in range(n_max + 1)},
        "enumeration",
    )


def rich_table(alphabet_size: int, n_max: int) -> CountTable:
    return CountTable(
        "rich",
        alphabet_size,
        {n: count_rich(alphabet_size, n) for n in range(n_max + 1)},
        "enumeration",
    )

"""Palindromic structure: the eertree, richness checks, and span properties.

The eertree (palindromic tree of Rubinchik and Shur) keeps one node per
distinct palindromic factor plus two roots, and yields in one left-to-right
pass the longest palindromic suffix of every prefix and the count of distinct
palindromes per length.  A word is rich exactly when every position creates a
new node, which also powers the pruned enumeration in :mod:`palrich.counting`
via push/pop.

The slower checks here (complete-return scan, span scan between a factor and
its reversal, alternation) are oracle-grade by design and validate the
eertree-based verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FactorAbsent, OutOfRange, PalindromicInput
from .factors import FactorIndex
from .words import Alphabet, Word


class Eertree:
    """Palindromic tree with undo support.

    Node 0 is the virtual root of length -1, node 1 the empty root.  Every
    other node is a distinct non-empty palindromic factor of the pushed word.
    ``pop`` reverts the last push exactly, which makes depth-first word
    enumeration cheap.
    """

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.data = bytearray()
        self._len = [-1, 0]
        self._link = [0, 0]
        self._trans: list[dict[int, int]] = [{}, {}]
        self._first_end = [0, 0]
        self.node_at: list[int] = []  # per position: longest palindromic suffix node
        self.created_at: list[int] = []  # per position: new node id, or 0
        self._last = 1
        self._undo: list[tuple[int, int, int, int]] = []
        self._occ: list[int] | None = None

    @classmethod
    def build(cls, w: Word) -> "Eertree":
        t = cls(w.alphabet)
        for c in w.data:
            t.push(c)
        return t

    def __len__(self):
        return len(self.data)

    @property
    def node_count(self) -> int:
        """Number of distinct non-empty palindromic factors."""
        return len(self._len) - 2

    def _extend_from(self, node: int, c: int) -> int:
        data = self.data
        pos = len(data) - 1
        length = self._len
        link = self._link
        while True:
            j = pos - length[node] - 1
            if j >= 0 and data[j] == c:
                return node
            node = link[node]

    def push(self, c: int) -> bool:
        """Append one letter; True iff a new palindromic factor appeared."""
        self.data.append(c)
        cur = self._extend_from(self._last, c)
        nxt = self._trans[cur].get(c)
        created = nxt is None
        if created:
            nxt = len(self._len)
            new_len = self._len[cur] + 2
            if new_len == 1:
                link = 1
            else:
                t = self._extend_from(self._link[cur], c)
                link = self._trans[t][c]
            self._len.append(new_len)
            self._link.append(link)
            self._trans.append({})
            self._first_end.append(len(self.data))
            self._trans[cur][c] = nxt
        self._undo.append((self._last, 1 if created else 0, cur, c))
        self._last = nxt
        self.node_at.append(nxt)
        self.created_at.append(nxt if created else 0)
        self._occ = None
        return created

    def pop(self):
        """Undo the last push."""
        prev_last, created, cur, c = self._undo.pop()
        if created:
            del self._trans[cur][c]
            self._len.pop()
            self._link.pop()
            self._trans.pop()
            self._first_end.pop()
        self._last = prev_last
        self.data.pop()
        self.node_at.pop()
        self.created_at.pop()
        self._occ = None

    def last_suffix_length(self) -> int:
        """Length of the longest palindromic suffix of the current word."""
        return max(self._len[self._last], 0)

    def palindrome_bytes(self, node: int) -> bytes:
        end = self._first_end[node]
        return bytes(self.data[end - self._len[node] : end])

    def palindrome(self, node: int) -> Word:
        return Word(self.alphabet, self.palindrome_bytes(node))

    def nodes_by_length(self) -> dict[int, int]:
        """Count of distinct palindromic factors per positive length."""
        counts: dict[int, int] = {}
        for node in range(2, len(self._len)):
            l = self._len[node]
            counts[l] = counts.get(l, 0) + 1
        return counts

    def occurrence_counts(self) -> list[int]:
        """Occurrences of each node's palindrome, via suffix-link propagation."""
        if self._occ is None:
            occ = [0] * len(self._len)
            for node in self.node_at:
                occ[node] += 1
            # A node's suffix link was created earlier, so ids run downhill.
            for node in range(len(self._len) - 1, 1, -1):
                occ[self._link[node]] += occ[node]
            self._occ = occ
        return self._occ


def build_eertree(w: Word) -> Eertree:
    """Palindromic-factor inventory of w with per-prefix suffix data."""
    return Eertree.build(w)


def palindromic_complexity(t: Eertree, n: int) -> int:
    """P(n), the number of distinct palindromic factors of length n.

    P(0) is 1 by convention (the empty word), which makes the identity
    P(n) + P(n+1) = C(n+1) - C(n) + 2 hold at n = 0 for every word.
    """
    if not 0 <= n <= len(t):
        raise OutOfRange(f"palindromic complexity needs 0 <= n <= {len(t)}")
    if n == 0:
        return 1
    return t.nodes_by_length().get(n, 0)


def longest_palindromic_suffix(t: Eertree, i: int) -> Word:
    """The longest palindromic suffix of the length-i prefix, 1 <= i <= |w|."""
    if not 1 <= i <= len(t):
        raise OutOfRange(f"prefix position must satisfy 1 <= i <= {len(t)}")
    node = t.node_at[i - 1]
    l = t._len[node]
    return Word(t.alphabet, bytes(t.data[i - l : i]))


@dataclass(frozen=True)
class RichnessReport:
    """Verdict of a richness check with diagnostics.

    ``rich`` holds iff the defect is 0 iff no prefix fails to contribute a
    new palindrome.  When present, ``witness`` is a (palindrome, complete
    return) pair where the return is not a palindrome.
    """

    rich: bool
    first_violation_prefix: int | None
    witness: tuple[Word, Word] | None
    defect: int


def _incremental_witness(t: Eertree, i: int) -> tuple[Word, Word]:
    # At the first violating position the longest palindromic suffix p has an
    # earlier occurrence; the span from the latest one is a complete return
    # to p, and it cannot be a palindrome (it would beat p as a suffix).
    data = bytes(t.data)
    node = t.node_at[i - 1]
    l = t._len[node]
    p = data[i - l : i]
    start = data.rfind(p, 0, i - 1)
    assert start >= 0
    alpha = t.alphabet
    return Word(alpha, p), Word(alpha, data[start:i])


def is_rich_incremental(w: Word) -> RichnessReport:
    """Single-pass richness check: every position must add a palindrome."""
    t = Eertree.build(w)
    violation = None
    for i, node in enumerate(t.created_at, start=1):
        if node == 0:
            violation = i
            break
    defect = len(w) - t.node_count
    if violation is None:
        return RichnessReport(True, None, None, defect)
    return RichnessReport(False, violation, _incremental_witness(t, violation), defect)


def _distinct_palindrome_spans(data: bytes) -> set[bytes]:
    # Center expansion; collects every distinct palindromic substring.
    out: set[bytes] = set()
    n = len(data)
    for center in range(n):
        for left, right in ((center, center), (center, center + 1)):
            while left >= 0 and right < n and data[left] == data[right]:
                out.add(data[left : right + 1])
                left -= 1
                right += 1
    return out


def is_rich_by_returns(w: Word) -> RichnessReport:
    """Quadratic oracle: every complete return to a palindrome is a palindrome.

    Scans palindromic factors in lexicographic order and their occurrence
    pairs in position order, so the reported witness is reproducible.  The
    defect and first violating prefix come from an eertree-free prefix sweep.
    """
    data = w.data
    alpha = w.alphabet
    rich = True
    witness = None
    for p in sorted(_distinct_palindrome_spans(data)):
        positions = []
        i = data.find(p)
        while i >= 0:
            positions.append(i)
            i = data.find(p, i + 1)
        if len(positions) < 2:
            continue
        for a, b in zip(positions, positions[1:]):
            span = data[a : b + len(p)]
            if span != span[::-1]:
                rich = False
                witness = (Word(alpha, p), Word(alpha, span))
                break
        if not rich:
            break
    pal_count = 1  # the empty word
    violation = None
    prev = 0
    for i in range(1, len(data) + 1):
        # Appending a letter stretches the longest palindromic suffix by at
        # most two, so the downward scan from prev+2 amortizes to O(n) tries.
        for l in range(min(i, prev + 2), 0, -1):
            tail = data[i - l : i]
            if tail == tail[::-1]:
                break
        prev = l
        if data.find(tail, 0, i - 1) < 0:
            pal_count += 1
        elif violation is None:
            violation = i
    return RichnessReport(rich, violation, witness, len(data) + 1 - pal_count)


def is_rich_by_count(w: Word) -> bool:
    """True iff w contains |w|+1 distinct palindromes, the empty word included."""
    return Eertree.build(w).node_count == len(w)


def check_v2reverse(idx: FactorIndex, v: Word) -> tuple[bool, Word | None]:
    """Spans from v to the next reversal of v must be palindromes.

    Scans occurrences of v and of its reversal in position order; every span
    from an occurrence of v to the next following occurrence of the reversal,
    with neither word occurring strictly between, is checked.  For
    palindromic v this is exactly complete-return checking.  Returns the
    first failing span as witness.
    """
    vb = v.data
    if not idx.has_factor(vb):
        raise FactorAbsent(f"{v!r} does not occur in the source")
    rb = vb[::-1]
    data = idx.source.data
    alpha = idx.alphabet
    if vb == rb:
        occ = idx.occurrences(vb)
        for a, b in zip(occ, occ[1:]):
            span = data[a : b + len(vb)]
            if span != span[::-1]:
                return False, Word(alpha, span)
        return True, None
    events = [(pos, 0) for pos in idx.occurrences(vb)]
    events += [(pos, 1) for pos in idx.occurrences(rb)]
    events.sort()
    for (pos_a, kind_a), (pos_b, kind_b) in zip(events, events[1:]):
        if kind_a == 0 and kind_b == 1:
            span = data[pos_a : pos_b + len(vb)]
            if span != span[::-1]:
                return False, Word(alpha, span)
    return True, None


def check_alternation(idx: FactorIndex, v: Word) -> bool:
    """Occurrences of a non-palindromic v and its reversal must alternate."""
    vb = v.data
    if vb == vb[::-1]:
        raise PalindromicInput("alternation applies to non-palindromic factors")
    if not idx.has_factor(vb):
        raise FactorAbsent(f"{v!r} does not occur in the source")
    events = [(pos, 0) for pos in idx.occurrences(vb)]
    events += [(pos, 1) for pos in idx.occurrences(vb[::-1])]
    events.sort()
    return all(a[1] != b[1] for a, b in zip(events, events[1:]))

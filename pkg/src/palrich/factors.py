"""Exact factor bookkeeping for finite words and for morphism fixed points.

A :class:`FactorIndex` holds the distinct-factor sets F_0..F_{n_max+1} of a
word, from which factor complexity C(n), extension degrees, special factors
and the complexity-difference identity all derive.  Occurrence positions are
computed lazily against the source word (storing every occurrence list up
front is pointless at megabyte prefixes).

Two further factor-set sources exist besides plain window scanning:

* ``stabilized_prefix`` doubles a generator's prefix until the factor sets
  stop changing, recording per-length stability flags, so finite prefixes can
  stand in for the infinite word they approximate.
* ``morphic_factor_sets`` computes the exact factor sets of a morphism fixed
  point by saturating windows of letter images.  Words like the fixed point
  of a -> aab, b -> b carry factors (long b-runs) whose first occurrence lies
  exponentially deep, far beyond any scannable prefix, and this closure is
  the only exact route to their complexity at useful depths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import (
    FactorAbsent,
    OutOfRange,
    SingleOccurrence,
    StabilizationFailed,
    WordTooShort,
)
from .words import Alphabet, Morphism, Word, fixed_point

DEFAULT_PREFIX_CAP = 1 << 20


class _WindowScan:
    """Incrementally maintained distinct-window sets for lengths 0..depth."""

    def __init__(self, depth: int):
        self.depth = depth
        self.data = bytearray()
        self.sets: list[set[bytes]] = [set() for _ in range(depth + 1)]
        self.sets[0].add(b"")
        self._changed = [False] * (depth + 1)

    def extend(self, chunk: bytes):
        old = len(self.data)
        self.data.extend(chunk)
        buf = bytes(self.data)
        total = len(buf)
        for n in range(1, self.depth + 1):
            s = self.sets[n]
            before = len(s)
            for end in range(max(n, old + 1), total + 1):
                s.add(buf[end - n : end])
            if len(s) != before:
                self._changed[n] = True

    def take_changed(self) -> list[bool]:
        changed = self._changed
        self._changed = [False] * (self.depth + 1)
        return changed


class FactorIndex:
    """Distinct factors per length 0..n_max+1 with extension bookkeeping."""

    def __init__(
        self,
        source: Word,
        n_max: int,
        sets: Sequence[Iterable[bytes]],
        *,
        stable: bool = True,
        stable_lengths: tuple[bool, ...] | None = None,
        exact: bool = True,
    ):
        if len(sets) != n_max + 2:
            raise ValueError("need factor sets for every length 0..n_max+1")
        self.source = source
        self.alphabet = source.alphabet
        self.n_max = n_max
        self._sets = [frozenset(s) for s in sets]
        self._sorted: dict[int, tuple[bytes, ...]] = {}
        self._occ: dict[bytes, tuple[int, ...]] = {}
        self._pal_counts: list[int] | None = None
        self.stable = stable
        self.stable_lengths = (
            stable_lengths if stable_lengths is not None else (True,) * (n_max + 2)
        )
        self.exact = exact

    @classmethod
    def build(cls, w: Word, n_max: int) -> "FactorIndex":
        """Scan every window of w up to length n_max+1."""
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        if n_max + 1 > len(w):
            raise WordTooShort(f"need n_max+1 <= |w|, got {n_max + 1} > {len(w)}")
        scan = _WindowScan(n_max + 1)
        scan.extend(w.data)
        return cls(w, n_max, scan.sets)

    @classmethod
    def from_sets(
        cls,
        alphabet: Alphabet,
        sets: Sequence[Iterable[bytes]],
        sample: Word,
        *,
        exact: bool = True,
    ) -> "FactorIndex":
        """Wrap externally computed factor sets (e.g. a morphic closure).

        ``sample`` is a prefix of the same word, used for occurrence-based
        probes; set-level queries never touch it.
        """
        return cls(sample, len(sets) - 2, sets, stable=True, exact=exact)

    # -- set-level queries ------------------------------------------------

    def factor_set(self, n: int) -> frozenset[bytes]:
        if not 0 <= n <= self.n_max + 1:
            raise OutOfRange(f"length {n} outside indexed range 0..{self.n_max + 1}")
        return self._sets[n]

    def factors(self, n: int) -> tuple[bytes, ...]:
        """Factors of length n in lexicographic (index) order."""
        if n not in self._sorted:
            self._sorted[n] = tuple(sorted(self.factor_set(n)))
        return self._sorted[n]

    def complexity(self, n: int) -> int:
        return len(self.factor_set(n))

    def palindrome_count(self, n: int) -> int:
        """Number of palindromic factors of length n (the empty word at 0)."""
        if self._pal_counts is None:
            self._pal_counts = [
                sum(1 for u in s if u == u[::-1]) for s in self._sets
            ]
        if not 0 <= n <= self.n_max + 1:
            raise OutOfRange(f"length {n} outside indexed range 0..{self.n_max + 1}")
        return self._pal_counts[n]

    def has_factor(self, u: bytes) -> bool:
        if len(u) <= self.n_max + 1:
            return u in self._sets[len(u)]
        return self.source.data.find(u) >= 0

    def right_extensions(self, n: int) -> dict[bytes, bytes]:
        """Map each length-n factor to its sorted right-extension letters.

        Extensions come from F_{n+1} membership, so only occurrences with a
        neighbor inside the prefix contribute; the last window of a finite
        prefix adds nothing.
        """
        if not 0 <= n <= self.n_max:
            raise OutOfRange(f"extensions need n <= n_max = {self.n_max}")
        ext: dict[bytes, list[int]] = {u: [] for u in self.factor_set(n)}
        for e in self.factors(n + 1):
            ext[e[:-1]].append(e[-1])
        return {u: bytes(sorted(letters)) for u, letters in ext.items()}

    def left_extensions(self, n: int) -> dict[bytes, bytes]:
        if not 0 <= n <= self.n_max:
            raise OutOfRange(f"extensions need n <= n_max = {self.n_max}")
        ext: dict[bytes, list[int]] = {u: [] for u in self.factor_set(n)}
        for e in self.factors(n + 1):
            ext[e[1:]].append(e[0])
        return {u: bytes(sorted(letters)) for u, letters in ext.items()}

    # -- occurrence-level queries -----------------------------------------

    def occurrences(self, u: Word | bytes) -> tuple[int, ...]:
        """Sorted start positions of u in the source word (overlaps allowed)."""
        needle = u.data if isinstance(u, Word) else bytes(u)
        cached = self._occ.get(needle)
        if cached is None:
            data = self.source.data
            positions = []
            i = data.find(needle)
            while i >= 0:
                positions.append(i)
                i = data.find(needle, i + 1)
            cached = self._occ[needle] = tuple(positions)
        return cached


def build_index(w: Word, n_max: int) -> FactorIndex:
    """Exact distinct-factor sets of w for all lengths 0..n_max+1."""
    return FactorIndex.build(w, n_max)


def factor_complexity(idx: FactorIndex, n: int) -> int:
    """C(n), the number of distinct factors of length n; C(0) = 1."""
    return idx.complexity(n)


@dataclass(frozen=True)
class SpecialFactorReport:
    """Special factors of one length, classified by extension degree."""

    n: int
    right_special: tuple[Word, ...]
    left_special: tuple[Word, ...]
    bispecial: tuple[Word, ...]
    special_palindrome_count: int

    @property
    def special(self) -> tuple[Word, ...]:
        merged = sorted(set(self.right_special) | set(self.left_special))
        return tuple(merged)


def special_factors(idx: FactorIndex, n: int) -> SpecialFactorReport:
    """Classify length-n factors: right-special means two right extensions."""
    if not 0 <= n < idx.n_max:
        raise OutOfRange(f"special factors need n < n_max = {idx.n_max}")
    right = idx.right_extensions(n)
    left = idx.left_extensions(n)
    alpha = idx.alphabet
    rs = tuple(Word(alpha, u) for u in idx.factors(n) if len(right[u]) >= 2)
    ls = tuple(Word(alpha, u) for u in idx.factors(n) if len(left[u]) >= 2)
    bis = tuple(w for w in rs if len(left[w.data]) >= 2)
    union = set(rs) | set(ls)
    p = sum(1 for w in union if w.is_palindrome())
    return SpecialFactorReport(n, rs, ls, bis, p)


def complexity_difference_identity(idx: FactorIndex, n: int) -> tuple[int, int]:
    """C(n+1)-C(n) versus the degree sum over special factors.

    Returns (C(n+1)-C(n), sum over special v of deg+(v)-1).  The two agree
    whenever every length-n factor extends to the right inside the index,
    which stabilized prefixes guarantee.
    """
    if not 0 <= n < idx.n_max:
        raise OutOfRange(f"identity needs n < n_max = {idx.n_max}")
    lhs = idx.complexity(n + 1) - idx.complexity(n)
    right = idx.right_extensions(n)
    left = idx.left_extensions(n)
    rhs = sum(
        len(right[u]) - 1
        for u in idx.factor_set(n)
        if len(right[u]) >= 2 or len(left[u]) >= 2
    )
    return lhs, rhs


@dataclass(frozen=True)
class CompleteReturns:
    """Complete returns to a factor: occurrence order and distinct views."""

    factor: Word
    all: tuple[Word, ...]
    distinct: tuple[Word, ...]


def complete_returns(idx: FactorIndex, u: Word) -> CompleteReturns:
    """Spans between consecutive occurrences of u in the source.

    Each span starts and ends with u and contains exactly two occurrences of
    it.  ``all`` keeps one entry per occurrence pair in position order;
    ``distinct`` deduplicates and sorts.
    """
    needle = u.data
    if not idx.has_factor(needle):
        raise FactorAbsent(f"{u!r} does not occur in the source")
    occ = idx.occurrences(needle)
    if len(occ) < 2:
        raise SingleOccurrence(f"{u!r} occurs only once; no complete returns")
    data = idx.source.data
    alpha = idx.alphabet
    spans = tuple(
        Word(alpha, data[occ[i] : occ[i + 1] + len(needle)])
        for i in range(len(occ) - 1)
    )
    return CompleteReturns(u, spans, tuple(sorted(set(spans))))


def is_closed_under_reversal(idx: FactorIndex, n: int) -> tuple[bool, Word | None]:
    """Check reversal closure of every factor set up to length n.

    On failure the witness is the first factor, scanning the longest length
    first and within a length in first-occurrence order (lexicographic order
    when the index has no positional source), whose reversal is absent.
    """
    if not 0 <= n <= idx.n_max + 1:
        raise OutOfRange(f"closure check needs n <= n_max+1 = {idx.n_max + 1}")
    failing_lengths = [
        m
        for m in range(1, n + 1)
        if any(u[::-1] not in idx.factor_set(m) for u in idx.factor_set(m))
    ]
    if not failing_lengths:
        return True, None
    m = max(failing_lengths)
    fset = idx.factor_set(m)
    if len(idx.source) >= m:
        data = idx.source.data
        seen = set()
        for i in range(len(data) - m + 1):
            u = data[i : i + m]
            if u in seen:
                continue
            seen.add(u)
            if u[::-1] not in fset:
                return False, Word(idx.alphabet, u)
    for u in sorted(fset):
        if u[::-1] not in fset:
            return False, Word(idx.alphabet, u)
    raise AssertionError("unreachable: failing length without failing factor")


def recurrence_probe(idx: FactorIndex, n: int, min_occurrences: int) -> bool:
    """True iff every factor of length <= n occurs at least min_occurrences times.

    A necessary-condition probe on the finite prefix, not a proof of
    recurrence of the generated infinite word.
    """
    if not 0 <= n <= idx.n_max + 1:
        raise OutOfRange(f"probe needs n <= n_max+1 = {idx.n_max + 1}")
    data = idx.source.data
    for m in range(1, n + 1):
        counts: dict[bytes, int] = {}
        for i in range(len(data) - m + 1):
            u = data[i : i + m]
            counts[u] = counts.get(u, 0) + 1
        for u in idx.factor_set(m):
            if counts.get(u, 0) < min_occurrences:
                return False
    return True


@dataclass(frozen=True)
class StabilizedPrefix:
    """Result of doubling a generator prefix until factor sets settle."""

    word: Word
    stable: bool
    stable_lengths: tuple[bool, ...]
    index: FactorIndex
    lengths_tried: tuple[int, ...]


def stabilized_prefix(
    produce: Callable[[int], Word],
    n_max: int,
    len_cap: int = DEFAULT_PREFIX_CAP,
) -> StabilizedPrefix:
    """Grow a prefix by doubling until F_0..F_{n_max+1} stop changing.

    Starts at 4*(n_max+1) letters and stops at ``len_cap``.  When the cap is
    hit first, the result is flagged unstable and the per-length flags mark
    which factor sets were still growing across the final doubling; nothing
    is thrown.
    """
    depth = n_max + 1
    base = 4 * depth
    if len_cap < base:
        raise ValueError(f"len_cap must be at least 4*(n_max+1) = {base}")
    scan = _WindowScan(depth)
    length = base
    word = produce(length)
    scan.extend(word.data)
    scan.take_changed()
    tried = [length]
    stable = False
    stable_lengths = (True,) + (False,) * depth
    while length < len_cap:
        new_length = min(2 * length, len_cap)
        grown = produce(new_length)
        if grown.data[: len(word)] != word.data:
            raise StabilizationFailed("generator is not prefix-stable")
        scan.extend(grown.data[len(word) :])
        word = grown
        length = new_length
        tried.append(length)
        changed = scan.take_changed()
        stable_lengths = tuple(not c for c in changed)
        if not any(changed[1:]):
            stable = True
            break
    idx = FactorIndex(
        word,
        n_max,
        scan.sets,
        stable=stable,
        stable_lengths=stable_lengths,
        exact=False,
    )
    return StabilizedPrefix(word, stable, stable_lengths, idx, tuple(tried))


def _derive_down(top: set[bytes], depth: int) -> list[frozenset[bytes]]:
    # For factor sets of an infinite word, every shorter factor extends to
    # depth, so F_n is exactly the set of length-n prefixes of F_{n+1}.
    sets: list[frozenset[bytes]] = [frozenset()] * (depth + 1)
    sets[depth] = frozenset(top)
    for n in range(depth - 1, -1, -1):
        sets[n] = frozenset(u[:n] for u in sets[n + 1])
    return sets


def morphic_factor_sets(
    m: Morphism,
    seed: str,
    depth: int,
    max_rounds: int = 4096,
) -> list[frozenset[bytes]]:
    """Exact factor sets, lengths 0..depth, of the fixed point of ``m``.

    Saturates the map u -> windows of m(u) at window length ``depth``: any
    depth-length window of m(w) sits inside the image of a depth-length
    factor of w, so iterating from the windows of a concrete prefix reaches
    exactly the factor set of the fixed point.  Shorter sets are prefix
    projections of the top one.
    """
    if depth == 0:
        return [frozenset({b""})]
    prefix = fixed_point(m, seed, max(4 * depth, 64)).data
    top = {prefix[i : i + depth] for i in range(len(prefix) - depth + 1)}
    frontier = set(top)
    rounds = 0
    while frontier:
        rounds += 1
        if rounds > max_rounds:
            raise StabilizationFailed(
                f"factor closure did not converge within {max_rounds} rounds"
            )
        fresh: set[bytes] = set()
        for u in frontier:
            img = m.apply_bytes(u)
            for i in range(len(img) - depth + 1):
                window = img[i : i + depth]
                if window not in top:
                    fresh.add(window)
        top |= fresh
        frontier = fresh
    return _derive_down(top, depth)


def image_factor_sets(
    m: Morphism,
    base_top: Iterable[bytes],
    depth: int,
) -> list[frozenset[bytes]]:
    """Exact factor sets of m(w) given the depth-length factor set of w.

    Windows of m(w) of length ``depth`` all lie inside images of
    depth-length factors of w, so one pass over ``base_top`` suffices.
    """
    if depth == 0:
        return [frozenset({b""})]
    top: set[bytes] = set()
    for u in base_top:
        img = m.apply_bytes(bytes(u))
        for i in range(len(img) - depth + 1):
            top.add(img[i : i + depth])
    return _derive_down(top, depth)


def periodic_factor_sets(block: Word, depth: int) -> list[frozenset[bytes]]:
    """Exact factor sets, lengths 0..depth, of block repeated forever."""
    q = len(block)
    if q == 0:
        raise ValueError("block must be non-empty")
    data = block.data * (depth // q + 2)
    top = {data[i : i + depth] for i in range(q)}
    return _derive_down(top, depth)

"""The three Rauzy graph tiers and their path-level properties.

Order-n Rauzy graph: vertices are the length-n factors, edges the length-
(n+1) factors, oriented prefix to suffix.  Contracting maximal runs of
non-special vertices gives the reduced graph on special factors, whose edges
are simple paths carrying word labels.  Quotienting special factors by
reversal gives the undirected super-reduced graph, whose tree-ness is the
combinatorial core of the equality

    P(n) + P(n+1) = C(n+1) - C(n) + 2.

Periodic words have no special factors at large orders; reduction then
returns a tagged single-cycle object instead of raising, and the identity is
checked through the periodicity route by callers.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .errors import NotApplicable, NotAWalk, OutOfRange, UnstableIndexWarning
from .factors import FactorIndex
from .palindromes import Eertree, palindromic_complexity
from .words import Word


class RauzyGraph:
    """Directed graph of order n: F_n vertices, F_{n+1} edges."""

    def __init__(self, idx: FactorIndex, n: int):
        if not 0 <= n < idx.n_max:
            raise OutOfRange(f"graph order must satisfy 0 <= n < n_max = {idx.n_max}")
        if not idx.stable:
            warnings.warn(
                "building a Rauzy graph on an unstabilized index",
                UnstableIndexWarning,
                stacklevel=3,
            )
        self.n = n
        self.alphabet = idx.alphabet
        self.stable = idx.stable
        self.vertices = idx.factors(n)
        self.edges = idx.factors(n + 1)
        out: dict[bytes, list[bytes]] = {v: [] for v in self.vertices}
        indeg: dict[bytes, int] = {v: 0 for v in self.vertices}
        for e in self.edges:
            out[e[:-1]].append(e)
            indeg[e[1:]] += 1
        self.out_edges = {v: tuple(es) for v, es in out.items()}
        self.in_degree = indeg
        self.out_degree = {v: len(es) for v, es in out.items()}
        rs = frozenset(v for v in self.vertices if self.out_degree[v] >= 2)
        left: dict[bytes, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            left[e[1:]].add(e[0])
        ls = frozenset(v for v in self.vertices if len(left[v]) >= 2)
        self.right_special = rs
        self.left_special = ls
        self.special = rs | ls

    @property
    def edge_set(self) -> frozenset[bytes]:
        return frozenset(self.edges)

    def is_strongly_connected(self) -> bool:
        if not self.vertices:
            return False
        fwd = {v: set() for v in self.vertices}
        back = {v: set() for v in self.vertices}
        for e in self.edges:
            fwd[e[:-1]].add(e[1:])
            back[e[1:]].add(e[:-1])
        for adj in (fwd, back):
            seen = {self.vertices[0]}
            stack = [self.vertices[0]]
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if len(seen) != len(self.vertices):
                return False
        return True


def build_rauzy(idx: FactorIndex, n: int) -> RauzyGraph:
    """Order-n Rauzy graph from an index (warns when the index is unstable)."""
    return RauzyGraph(idx, n)


@dataclass(frozen=True)
class SimplePath:
    """A directed path with special endpoints and non-special interior."""

    vertices: tuple[bytes, ...]
    edges: tuple[bytes, ...]
    label: bytes

    @property
    def source(self) -> bytes:
        return self.vertices[0]

    @property
    def target(self) -> bytes:
        return self.vertices[-1]

    @property
    def palindromic(self) -> bool:
        return self.label == self.label[::-1]

    @property
    def nontrivial(self) -> bool:
        return len(self.edges) >= 1

    def sort_key(self):
        return (self.source, self.target, self.label)


def _walk_label(vertices: Sequence[bytes], g: RauzyGraph) -> tuple[bytes, tuple[bytes, ...]]:
    if not vertices:
        raise NotAWalk("a walk needs at least one vertex")
    edge_set = g.edge_set
    for v in vertices:
        if v not in g.out_edges:
            raise NotAWalk(f"{v!r} is not a vertex of the order-{g.n} graph")
    label = bytearray(vertices[0])
    edges = []
    for a, b in zip(vertices, vertices[1:]):
        if a[1:] != b[:-1]:
            raise NotAWalk(f"vertices {a!r} and {b!r} do not overlap")
        e = a + b[-1:]
        if e not in edge_set:
            raise NotAWalk(f"no edge {e!r} in the order-{g.n} graph")
        label.append(b[-1])
        edges.append(e)
    return bytes(label), tuple(edges)


def path_label(vertices: Sequence[bytes | Word], g: RauzyGraph) -> Word:
    """Label of a walk: the first vertex extended by one letter per edge.

    Satisfies both factorizations: first vertex plus trailing letters equals
    leading letters plus last vertex.
    """
    raw = tuple(v.data if isinstance(v, Word) else bytes(v) for v in vertices)
    label, _ = _walk_label(raw, g)
    return Word(g.alphabet, label)


def label_is_rich_check(g: RauzyGraph, walk: Sequence[bytes | Word]) -> bool:
    """Richness of a walk label (true for every walk of a rich word)."""
    from .palindromes import is_rich_incremental

    return is_rich_incremental(path_label(walk, g)).rich


@dataclass(frozen=True)
class CycleInfo:
    """Fallback object when reduction meets a graph with no special vertex."""

    vertices: tuple[bytes, ...]
    closed: bool


@dataclass(frozen=True)
class ReducedRauzyGraph:
    """Special factors as vertices; one labeled edge per simple path."""

    n: int
    vertices: tuple[bytes, ...]
    edges: tuple[SimplePath, ...]
    cycle: CycleInfo | None = None
    dangling: tuple[SimplePath, ...] = ()

    @property
    def no_specials(self) -> bool:
        return not self.vertices


def _simple_paths(g: RauzyGraph) -> tuple[list[SimplePath], list[SimplePath]]:
    special = g.special
    complete: list[SimplePath] = []
    dangling: list[SimplePath] = []
    limit = len(g.edges) + 1
    for v in sorted(special):
        for first in g.out_edges[v]:
            verts = [v]
            edges = [first]
            label = bytearray(v)
            label.append(first[-1])
            cur = first[1:]
            steps = 0
            while cur not in special:
                outs = g.out_edges[cur]
                if not outs:
                    # Truncated walk: only possible on unstabilized prefixes.
                    verts.append(cur)
                    dangling.append(
                        SimplePath(tuple(verts), tuple(edges), bytes(label))
                    )
                    cur = None
                    break
                if len(outs) > 1:
                    raise AssertionError("non-special vertex with out-degree > 1")
                e = outs[0]
                verts.append(cur)
                edges.append(e)
                label.append(e[-1])
                cur = e[1:]
                steps += 1
                if steps > limit:
                    raise AssertionError("walk exceeded edge count; graph corrupt")
            if cur is not None:
                verts.append(cur)
                complete.append(SimplePath(tuple(verts), tuple(edges), bytes(label)))
    complete.sort(key=SimplePath.sort_key)
    return complete, dangling


def _trace_cycle(g: RauzyGraph) -> CycleInfo:
    start = g.vertices[0]
    seq = [start]
    cur = start
    for _ in range(len(g.edges) + 1):
        outs = g.out_edges[cur]
        if not outs:
            return CycleInfo(tuple(seq), closed=False)
        cur = outs[0][1:]
        if cur == start:
            return CycleInfo(tuple(seq), closed=True)
        seq.append(cur)
    return CycleInfo(tuple(seq), closed=False)


def reduce(g: RauzyGraph) -> ReducedRauzyGraph:
    """Contract maximal runs of non-special vertices into labeled edges.

    A graph without special vertices (an eventually periodic word at this
    order) yields a tagged cycle object with no vertices or edges.
    """
    if not g.special:
        return ReducedRauzyGraph(g.n, (), (), cycle=_trace_cycle(g))
    complete, dangling = _simple_paths(g)
    return ReducedRauzyGraph(
        g.n,
        tuple(sorted(g.special)),
        tuple(complete),
        dangling=tuple(dangling),
    )


@dataclass(frozen=True)
class PathFact:
    path: SimplePath
    palindromic: bool
    reversal_exists: bool


@dataclass(frozen=True)
class PathFacts:
    """Per-path reversal facts plus the counts feeding the path identity."""

    n: int
    facts: tuple[PathFact, ...]
    s: int
    p: int

    @property
    def n_nontrivial(self) -> int:
        return len(self.facts)

    @property
    def n_nonpalindromic(self) -> int:
        return sum(1 for f in self.facts if not f.palindromic)

    def self_class_paths(self) -> tuple[SimplePath, ...]:
        return tuple(
            f.path
            for f in self.facts
            if f.path.target in (f.path.source, f.path.source[::-1])
        )


def _class_key(v: bytes) -> tuple[bytes, bytes]:
    r = v[::-1]
    return (v, r) if v <= r else (r, v)


@dataclass(frozen=True)
class SuperEdge:
    class_a: tuple[bytes, bytes]
    class_b: tuple[bytes, bytes]
    label_class: tuple[bytes, bytes]
    paths: tuple[SimplePath, ...]


@dataclass(frozen=True)
class SuperReducedRauzyGraph:
    """Reversal classes of special factors with undirected path edges.

    Paths joining a class to itself (a special factor to its own reversal)
    are not edges here; they live in the accompanying :class:`PathFacts`.
    Multi-edges between a class pair are kept apart so that tree detection
    sees them.
    """

    n: int
    classes: tuple[tuple[bytes, bytes], ...]
    edges: tuple[SuperEdge, ...]
    s: int
    p: int
    no_specials: bool = False


def super_reduce(rg: ReducedRauzyGraph) -> tuple[SuperReducedRauzyGraph, PathFacts]:
    """Quotient the reduced graph by reversal and collect path facts."""
    if rg.no_specials:
        sg = SuperReducedRauzyGraph(rg.n, (), (), 0, 0, no_specials=True)
        return sg, PathFacts(rg.n, (), 0, 0)
    classes = sorted({_class_key(v) for v in rg.vertices})
    p = sum(1 for v in rg.vertices if v == v[::-1])
    s = len(classes)
    label_set = {path.label for path in rg.edges}
    facts = tuple(
        PathFact(path, path.palindromic, path.label[::-1] in label_set)
        for path in rg.edges
    )
    grouped: dict[tuple, dict[tuple[bytes, bytes], list[SimplePath]]] = {}
    for path in rg.edges:
        ka, kb = _class_key(path.source), _class_key(path.target)
        if ka == kb:
            continue
        if kb < ka:
            ka, kb = kb, ka
        label = path.label
        rlabel = label[::-1]
        lkey = (label, rlabel) if label <= rlabel else (rlabel, label)
        grouped.setdefault((ka, kb), {}).setdefault(lkey, []).append(path)
    edges = tuple(
        SuperEdge(ka, kb, lkey, tuple(paths))
        for (ka, kb), by_label in sorted(grouped.items())
        for lkey, paths in sorted(by_label.items())
    )
    sg = SuperReducedRauzyGraph(rg.n, tuple(classes), edges, s, p)
    return sg, PathFacts(rg.n, facts, s, p)


def is_tree(sg: SuperReducedRauzyGraph) -> bool:
    """Connected with exactly s-1 edges; multi-edges break tree-ness."""
    if sg.s == 0:
        return False
    if len(sg.edges) != sg.s - 1:
        return False
    parent = {c: c for c in sg.classes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    components = sg.s
    for e in sg.edges:
        ra, rb = find(e.class_a), find(e.class_b)
        if ra != rb:
            parent[ra] = rb
            components -= 1
    return components == 1


def palindromic_path_condition(
    rg: ReducedRauzyGraph,
    facts: PathFacts | None = None,
) -> tuple[bool, SimplePath | None]:
    """Every simple path from a special factor to its reversal is palindromic.

    Returns the first counterexample path in sorted order, if any.  The
    optional ``facts`` argument is accepted for callers that already hold
    them; the verdict only needs the reduced graph.
    """
    for path in rg.edges:
        if path.target == path.source[::-1] and not path.palindromic:
            return False, path
    return True, None


@dataclass(frozen=True)
class PathCountingIdentity:
    """Both sides of the palindromic path-counting identity at one order."""

    lhs: int  # P(n) + P(n+1)
    rhs: int  # sum of out-degrees over specials - 2(s-1) + p
    central_cover_ok: bool

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs and self.central_cover_ok


def _central_factor(label: bytes, m: int) -> bytes:
    offset = (len(label) - m) // 2
    return label[offset : offset + m]


def path_counting_identity(
    g: RauzyGraph,
    rg: ReducedRauzyGraph,
    facts: PathFacts,
    pal_counts: Eertree | tuple[int, int],
) -> PathCountingIdentity:
    """Evaluate P(n)+P(n+1) against the simple-path count at order n.

    The right-hand side counts non-trivial simple paths (one per out-edge of
    a special factor), subtracts the non-palindromic ones, expected to pair
    up across the s-1 tree edges, and adds the special palindromes (trivial
    palindromic paths).  Also verifies that every palindromic factor of
    length n or n+1 is the central factor of exactly one palindromic simple
    path.  Meaningful on rich reversal-closed words at stabilized orders.

    ``pal_counts`` is either an eertree over a stabilized prefix or the
    explicit pair (P(n), P(n+1)) when palindrome counts come from exact
    factor sets.
    """
    if rg.no_specials:
        raise NotApplicable("no special factors at this order; periodic route applies")
    n = g.n
    if isinstance(pal_counts, Eertree):
        p_n = palindromic_complexity(pal_counts, n)
        p_n1 = palindromic_complexity(pal_counts, n + 1)
    else:
        p_n, p_n1 = pal_counts
    lhs = p_n + p_n1
    rhs = (
        sum(g.out_degree[v] for v in rg.vertices)
        - 2 * (facts.s - 1)
        + facts.p
    )
    centers: dict[bytes, int] = {}
    for path in rg.edges:
        if not path.palindromic:
            continue
        label = path.label
        m = n if (len(label) - n) % 2 == 0 else n + 1
        c = _central_factor(label, m)
        centers[c] = centers.get(c, 0) + 1
    for v in rg.vertices:
        if v == v[::-1]:
            centers[v] = centers.get(v, 0) + 1
    palindromes = {u for u in g.vertices if u == u[::-1]}
    palindromes |= {u for u in g.edges if u == u[::-1]}
    cover_ok = all(centers.get(u, 0) == 1 for u in palindromes) and set(
        centers
    ) <= palindromes
    return PathCountingIdentity(lhs, rhs, cover_ok)


def path_reversal_facts(
    g: RauzyGraph, walk: Sequence[bytes | Word]
) -> tuple[bool, bool]:
    """(reversal exists in the graph, walk is invariant under reversal).

    The reversal of a walk reverses the vertex order and each vertex word;
    it need not exist when the factor set is not closed under reversal.
    """
    raw = tuple(v.data if isinstance(v, Word) else bytes(v) for v in walk)
    _walk_label(raw, g)  # validates the walk
    mirrored = tuple(v[::-1] for v in reversed(raw))
    palindromic = mirrored == raw
    edge_set = g.edge_set
    exists = all(v in g.out_edges for v in mirrored)
    if exists:
        for a, b in zip(mirrored, mirrored[1:]):
            if a[1:] != b[:-1] or a + b[-1:] not in edge_set:
                exists = False
                break
    return exists, palindromic


# -- DOT rendering ---------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def rauzy_dot(g: RauzyGraph) -> str:
    """Deterministic DOT for the raw graph: one edge per (n+1)-factor."""
    decode = g.alphabet.decode
    lines = [f"digraph rauzy_{g.n} {{"]
    if not g.special:
        lines.append('  graph [note="no special vertices; single cycle"];')
    for v in g.vertices:
        lines.append(f"  {_quote(decode(v))};")
    for e in g.edges:
        src, dst = decode(e[:-1]), decode(e[1:])
        lines.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(decode(e))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def reduced_dot(rg: ReducedRauzyGraph, alphabet) -> str:
    """Deterministic DOT for the reduced graph with path labels."""
    decode = alphabet.decode
    lines = [f"digraph reduced_rauzy_{rg.n} {{"]
    if rg.no_specials:
        lines.append('  graph [note="no special vertices; single cycle"];')
        cyc = rg.cycle
        if cyc is not None:
            for v in sorted(cyc.vertices):
                lines.append(f"  {_quote(decode(v))};")
            ring = list(cyc.vertices)
            if cyc.closed:
                ring.append(cyc.vertices[0])
            for a, b in zip(ring, ring[1:]):
                lines.append(f"  {_quote(decode(a))} -> {_quote(decode(b))};")
    else:
        for v in rg.vertices:
            lines.append(f"  {_quote(decode(v))};")
        for path in rg.edges:
            src, dst = decode(path.source), decode(path.target)
            lines.append(
                f"  {_quote(src)} -> {_quote(dst)} "
                f"[label={_quote(decode(path.label))}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def super_dot(sg: SuperReducedRauzyGraph, alphabet) -> str:
    """Deterministic DOT for the super-reduced graph (undirected)."""
    decode = alphabet.decode
    lines = [f"graph super_reduced_rauzy_{sg.n} {{"]
    if sg.no_specials:
        lines.append('  graph [note="no special vertices; single cycle"];')
    for cls in sg.classes:
        lines.append(f"  {_quote('[' + decode(cls[0]) + ']')};")
    for e in sg.edges:
        a = _quote("[" + decode(e.class_a[0]) + "]")
        b = _quote("[" + decode(e.class_b[0]) + "]")
        label = _quote("[" + decode(e.label_class[0]) + "]")
        lines.append(f"  {a} -- {b} [label={label}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

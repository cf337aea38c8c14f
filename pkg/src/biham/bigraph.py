"""Labeled bipartite graphs with bitset adjacency.

Vertices live in two parts X and Y, addressed by 0-based indices within
their part. Adjacency is stored as one Y-bitmask per X-vertex, so row
operations (complement, induced subgraphs, twin detection) are cheap and
the Y->X view is derived on demand. Graphs are immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyPart,
    InvalidEdge,
    InvalidVertex,
    ParseError,
    TooLarge,
)

ENUMERATION_CEILING = 25  # enumerate_all refuses more than 2^25 graphs


@dataclass(frozen=True, order=True)
class VertexRef:
    """A vertex addressed by part ("X" or "Y") and index within the part."""

    part: str
    index: int

    def __post_init__(self):
        if self.part not in ("X", "Y"):
            raise InvalidVertex(f"part must be 'X' or 'Y', got {self.part!r}")
        if self.index < 0:
            raise InvalidVertex(f"negative vertex index {self.index}")

    def __str__(self):
        return f"{self.part.lower()}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "VertexRef":
        text = text.strip()
        if len(text) < 2 or text[0] not in "xyXY" or not text[1:].isdigit():
            raise InvalidVertex(f"cannot parse vertex reference {text!r}")
        return cls(text[0].upper(), int(text[1:]))


def xref(i: int) -> VertexRef:
    return VertexRef("X", i)


def yref(j: int) -> VertexRef:
    return VertexRef("Y", j)


@dataclass(frozen=True)
class BalancedDeletionSet:
    """Equal-sized sets of X- and Y-indices to delete together."""

    x_set: frozenset
    y_set: frozenset

    def __post_init__(self):
        object.__setattr__(self, "x_set", frozenset(self.x_set))
        object.__setattr__(self, "y_set", frozenset(self.y_set))
        if len(self.x_set) != len(self.y_set):
            raise InvalidVertex(
                f"deletion set is unbalanced: |x_set|={len(self.x_set)} "
                f"!= |y_set|={len(self.y_set)}"
            )

    @property
    def p(self) -> int:
        return len(self.x_set)

    @classmethod
    def of(cls, x_indices, y_indices) -> "BalancedDeletionSet":
        return cls(frozenset(x_indices), frozenset(y_indices))


class BipartiteGraph:
    """Simple bipartite graph on labeled parts of sizes n_x and n_y."""

    __slots__ = ("n_x", "n_y", "rows", "_m")

    def __init__(self, n_x: int, n_y: int, rows):
        if n_x < 0 or n_y < 0:
            raise InvalidVertex("part sizes must be nonnegative")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n_x:
            raise InvalidVertex(f"expected {n_x} adjacency rows, got {len(rows)}")
        full = (1 << n_y) - 1
        for i, r in enumerate(rows):
            if r < 0 or r & ~full:
                raise InvalidEdge(f"row {i} has neighbor bits outside 0..{n_y - 1}")
        object.__setattr__(self, "n_x", n_x)
        object.__setattr__(self, "n_y", n_y)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_m", sum(r.bit_count() for r in rows))

    def __setattr__(self, *_):
        raise AttributeError("BipartiteGraph is immutable")

    # -- basic measures ---------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def total_vertices(self) -> int:
        return self.n_x + self.n_y

    def has_edge(self, x: int, y: int) -> bool:
        self._check_x(x)
        self._check_y(y)
        return bool((self.rows[x] >> y) & 1)

    def degree_x(self, i: int) -> int:
        self._check_x(i)
        return self.rows[i].bit_count()

    def degree_y(self, j: int) -> int:
        self._check_y(j)
        return sum((r >> j) & 1 for r in self.rows)

    def degree(self, v: VertexRef) -> int:
        return self.degree_x(v.index) if v.part == "X" else self.degree_y(v.index)

    def min_degree(self) -> int:
        """Minimum degree over all vertices; rejects graphs with an empty part."""
        if self.n_x == 0 or self.n_y == 0:
            raise EmptyPart("min_degree is undefined when a part is empty")
        return min(
            min(r.bit_count() for r in self.rows),
            min(c.bit_count() for c in self.columns()),
        )

    def neighbors_x(self, i: int):
        """Sorted Y-indices adjacent to x_i."""
        self._check_x(i)
        return _bits(self.rows[i])

    def neighbors_y(self, j: int):
        self._check_y(j)
        return _bits(self.columns()[j])

    def columns(self):
        """Derived Y->X view: one X-bitmask per Y-vertex."""
        cols = [0] * self.n_y
        for i, r in enumerate(self.rows):
            bit = 1 << i
            for j in _bits(r):
                cols[j] |= bit
        return tuple(cols)

    def edges(self):
        """All edges as (x, y) pairs in lexicographic order."""
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def is_balanced(self) -> bool:
        return self.n_x == self.n_y

    def is_nearly_balanced(self) -> bool:
        """Parts differ in size by exactly one (either orientation)."""
        return abs(self.n_x - self.n_y) == 1

    # -- derived graphs ---------------------------------------------------

    def bipartite_complement(self) -> "BipartiteGraph":
        full = (1 << self.n_y) - 1
        return BipartiteGraph(self.n_x, self.n_y, [full ^ r for r in self.rows])

    def transpose(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n_y, self.n_x, self.columns())

    def with_edge(self, x: int, y: int) -> "BipartiteGraph":
        self._check_x(x)
        self._check_y(y)
        rows = list(self.rows)
        rows[x] |= 1 << y
        return BipartiteGraph(self.n_x, self.n_y, rows)

    def induced(self, keep_x, keep_y) -> "BipartiteGraph":
        """Induced subgraph on the given index sets, compacted preserving order."""
        keep_x = sorted(set(keep_x))
        keep_y = sorted(set(keep_y))
        for i in keep_x:
            self._check_x(i)
        for j in keep_y:
            self._check_y(j)
        rows = []
        for i in keep_x:
            r = self.rows[i]
            rows.append(sum(((r >> j) & 1) << pos for pos, j in enumerate(keep_y)))
        return BipartiteGraph(len(keep_x), len(keep_y), rows)

    def delete_balanced_set(self, w: BalancedDeletionSet) -> "BipartiteGraph":
        for i in w.x_set:
            if not 0 <= i < self.n_x:
                raise InvalidVertex(f"x index {i} out of range")
        for j in w.y_set:
            if not 0 <= j < self.n_y:
                raise InvalidVertex(f"y index {j} out of range")
        keep_x = [i for i in range(self.n_x) if i not in w.x_set]
        keep_y = [j for j in range(self.n_y) if j not in w.y_set]
        return self.induced(keep_x, keep_y)

    # -- structure --------------------------------------------------------

    def components(self):
        """Connected components as (x_indices, y_indices) tuples."""
        cols = self.columns()
        seen_x = [False] * self.n_x
        seen_y = [False] * self.n_y
        comps = []
        for start in range(self.n_x + self.n_y):
            if start < self.n_x:
                if seen_x[start]:
                    continue
                stack, cx, cy = [("X", start)], [], []
                seen_x[start] = True
            else:
                j = start - self.n_x
                if seen_y[j]:
                    continue
                stack, cx, cy = [("Y", j)], [], []
                seen_y[j] = True
            while stack:
                part, idx = stack.pop()
                if part == "X":
                    cx.append(idx)
                    for j in _bits(self.rows[idx]):
                        if not seen_y[j]:
                            seen_y[j] = True
                            stack.append(("Y", j))
                else:
                    cy.append(idx)
                    for i in _bits(cols[idx]):
                        if not seen_x[i]:
                            seen_x[i] = True
                            stack.append(("X", i))
            comps.append((tuple(sorted(cx)), tuple(sorted(cy))))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def x_twin_classes(self):
        """Groups of X-indices with identical neighborhoods, each sorted."""
        groups = {}
        for i, r in enumerate(self.rows):
            groups.setdefault(r, []).append(i)
        return sorted(groups.values())

    def y_twin_classes(self):
        groups = {}
        for j, c in enumerate(self.columns()):
            groups.setdefault(c, []).append(j)
        return sorted(groups.values())

    def biadjacency(self) -> np.ndarray:
        """Dense 0/1 biadjacency matrix, shape (n_x, n_y)."""
        mat = np.zeros((self.n_x, self.n_y), dtype=np.float64)
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                mat[i, j] = 1.0
        return mat

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self.n_x == other.n_x
            and self.n_y == other.n_y
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.n_x, self.n_y, self.rows))

    def __repr__(self):
        return f"BipartiteGraph(n_x={self.n_x}, n_y={self.n_y}, e={self._m})"

    def _check_x(self, i: int):
        if not 0 <= i < self.n_x:
            raise InvalidVertex(f"x index {i} out of range 0..{self.n_x - 1}")

    def _check_y(self, j: int):
        if not 0 <= j < self.n_y:
            raise InvalidVertex(f"y index {j} out of range 0..{self.n_y - 1}")


def _bits(mask: int):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# -- construction ----------------------------------------------------------


def build(n_x: int, n_y: int, edges) -> BipartiteGraph:
    """Build a simple bipartite graph; repeated input pairs are deduplicated."""
    rows = [0] * n_x
    for x, y in edges:
        if not 0 <= x < n_x or not 0 <= y < n_y:
            raise InvalidEdge(f"edge ({x},{y}) out of range for parts ({n_x},{n_y})")
        rows[x] |= 1 << y
    return BipartiteGraph(n_x, n_y, rows)


def complete_bipartite(n_x: int, n_y: int) -> BipartiteGraph:
    full = (1 << n_y) - 1
    return BipartiteGraph(n_x, n_y, [full] * n_x)


def random_graph(n_x: int, n_y: int, edge_probability: float, seed) -> BipartiteGraph:
    """Independent-edge random bipartite graph, deterministic given the seed."""
    if not 0.0 <= edge_probability <= 1.0:
        raise InvalidEdge(f"edge probability {edge_probability} outside [0, 1]")
    rng = np.random.default_rng(seed)
    mat = rng.random((n_x, n_y)) < edge_probability
    rows = [sum(1 << j for j in range(n_y) if mat[i, j]) for i in range(n_x)]
    return BipartiteGraph(n_x, n_y, rows)


def enumerate_all(n_x: int, n_y: int):
    """Yield every labeled bipartite graph on the given parts exactly once."""
    cells = n_x * n_y
    if cells > ENUMERATION_CEILING:
        raise TooLarge(
            f"enumerating 2^{cells} graphs exceeds the 2^{ENUMERATION_CEILING} ceiling"
        )
    full_y = (1 << n_y) - 1
    for code in range(1 << cells):
        rows = [(code >> (i * n_y)) & full_y for i in range(n_x)]
        yield BipartiteGraph(n_x, n_y, rows)


# -- BEL text format --------------------------------------------------------
#
# Header `p bip <n_x> <n_y> <m>`, then exactly m lines `e <x> <y>` with
# 0-based indices, LF endings, edges sorted lexicographically on output.
# Comment lines start with `c`.


def serialize(g: BipartiteGraph) -> str:
    lines = [f"p bip {g.n_x} {g.n_y} {g.edge_count}"]
    lines.extend(f"e {x} {y}" for x, y in g.edges())
    return "\n".join(lines) + "\n"


def parse(text: str) -> BipartiteGraph:
    header = None
    edges = []
    expected = 0
    seen = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "p" or len(fields) != 5 or fields[1] != "bip":
                raise ParseError(f"expected header 'p bip <n_x> <n_y> <m>', got {line!r}", lineno)
            try:
                n_x, n_y, expected = (int(f) for f in fields[2:])
            except ValueError:
                raise ParseError(f"non-integer header field in {line!r}", lineno) from None
            if n_x < 0 or n_y < 0 or expected < 0:
                raise ParseError("negative header field", lineno)
            header = (n_x, n_y)
            continue
        if fields[0] != "e" or len(fields) != 3:
            raise ParseError(f"expected edge line 'e <x> <y>', got {line!r}", lineno)
        try:
            x, y = int(fields[1]), int(fields[2])
        except ValueError:
            raise ParseError(f"non-integer edge endpoint in {line!r}", lineno) from None
        if not 0 <= x < header[0] or not 0 <= y < header[1]:
            raise ParseError(f"edge ({x},{y}) out of range for parts {header}", lineno)
        if (x, y) in seen:
            raise ParseError(f"duplicate edge ({x},{y})", lineno)
        seen.add((x, y))
        edges.append((x, y))
    if header is None:
        raise ParseError("missing header line", 1)
    if len(edges) != expected:
        raise ParseError(f"header promises {expected} edges, found {len(edges)}", 1)
    return build(header[0], header[1], edges)


def is_subgraph_same_labels(h: BipartiteGraph, g: BipartiteGraph) -> bool:
    """True when H and G share part sizes and every H-edge is a G-edge."""
    return (
        h.n_x == g.n_x
        and h.n_y == g.n_y
        and all(hr & ~gr == 0 for hr, gr in zip(h.rows, g.rows))
    )


def all_vertex_pairs(g: BipartiteGraph):
    """All unordered pairs of distinct vertices, cross-part and same-part."""
    refs = [xref(i) for i in range(g.n_x)] + [yref(j) for j in range(g.n_y)]
    return list(itertools.combinations(refs, 2))

"""Skew-symmetrizable exchange matrices, valued quivers, and Dynkin types.

An exchange matrix is an r x r integer matrix M with a positive integer
vector d such that d_i*M_ij = -d_j*M_ji.  The associated valued quiver has
an arrow i -> j with values (M_ij, -M_ji) whenever M_ij > 0.  Dynkin
diagrams are handled as the undirected valued graphs underlying these
quivers; recognition ignores orientation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence, Tuple

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


@dataclass(frozen=True, order=True)
class DynkinComponent:
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class ValuedArrow:
    source: int
    target: int
    values: Tuple[int, int]  # (b, c) with M[source][target] = b, M[target][source] = -c


class DynkinType:
    """A multiset of connected Dynkin components, possibly empty.

    Construction normalizes degenerate names: A1 = B1 = C1, C2 = B2,
    D2 = A1 x A1, D3 = A3.  Components are kept sorted, so equal multisets
    compare and hash equal.
    """

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Tuple[str, int]]):
        normal = []
        for family, rank in components:
            family = family.upper()
            if family not in FAMILIES:
                raise ValueError(f"unknown family {family!r}")
            if rank < 1:
                raise ValueError(f"rank must be positive, got {rank}")
            if family in ("B", "C") and rank == 1:
                family = "A"
            if family == "C" and rank == 2:
                family = "B"
            if family == "D" and rank == 2:
                normal.extend([("A", 1), ("A", 1)])
                continue
            if family == "D" and rank == 3:
                family = "A"
            if family == "E" and rank not in (6, 7, 8):
                raise ValueError(f"E{rank} is not a Dynkin diagram")
            if family == "F" and rank != 4:
                raise ValueError(f"F{rank} is not a Dynkin diagram")
            if family == "G" and rank != 2:
                raise ValueError(f"G{rank} is not a Dynkin diagram")
            normal.append((family, rank))
        object.__setattr__(
            self, "components", tuple(sorted(DynkinComponent(f, r) for f, r in normal))
        )

    def __setattr__(self, name, value):
        raise AttributeError("DynkinType is immutable")

    @staticmethod
    def empty() -> "DynkinType":
        return DynkinType([])

    @staticmethod
    def parse(spec: str) -> "DynkinType":
        """Parse a type string like "A3", "B2", or "A1xG2" (case-insensitive)."""
        spec = spec.strip()
        if not spec or spec.lower() in ("empty", "0"):
            return DynkinType.empty()
        parts = spec.replace("X", "x").split("x")
        comps = []
        for part in parts:
            part = part.strip()
            if len(part) < 2 or part[0].upper() not in FAMILIES or not part[1:].isdigit():
                raise ValueError(f"cannot parse Dynkin type {spec!r}")
            comps.append((part[0].upper(), int(part[1:])))
        return DynkinType(comps)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def is_empty(self) -> bool:
        return not self.components

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def __mul__(self, other: "DynkinType") -> "DynkinType":
        return DynkinType([(c.family, c.rank) for c in self.components + other.components])

    def __eq__(self, other) -> bool:
        return isinstance(other, DynkinType) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        if not self.components:
            return "empty"
        return "x".join(str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"DynkinType({self})"


def _component_edges(family: str, rank: int):
    """Edges of the canonical diagram, as (i, j, w_ij, w_ji) with 0-based vertices.

    w_ij is the arrow value read from i toward j; simply-laced edges are (1,1).
    """
    chain = lambda n: [(k, k + 1, 1, 1) for k in range(n - 1)]
    if family == "A":
        return chain(rank)
    if family == "B":
        return chain(rank - 1) + [(rank - 2, rank - 1, 1, 2)]
    if family == "C":
        return chain(rank - 1) + [(rank - 2, rank - 1, 2, 1)]
    if family == "D":
        return chain(rank - 2) + [(rank - 3, rank - 2, 1, 1), (rank - 3, rank - 1, 1, 1)]
    if family == "E":
        return chain(rank - 1) + [(2, rank - 1, 1, 1)]
    if family == "F":
        return [(0, 1, 1, 1), (1, 2, 1, 2), (2, 3, 1, 1)]
    if family == "G":
        return [(0, 1, 1, 3)]
    raise ValueError(f"unknown family {family!r}")


class ExchangeMatrix:
    """A skew-symmetrizable integer matrix together with its symmetrizer."""

    __slots__ = ("entries", "skew_symmetrizer")

    def __init__(self, entries, skew_symmetrizer=None):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        if any(rows[i][i] != 0 for i in range(n)):
            raise ValueError("diagonal entries must vanish")
        if skew_symmetrizer is None:
            skew_symmetrizer = _find_symmetrizer(rows)
        d = tuple(int(x) for x in skew_symmetrizer)
        if len(d) != n or any(x <= 0 for x in d):
            raise ValueError("skew-symmetrizer must be a positive integer vector")
        for i in range(n):
            for j in range(n):
                if d[i] * rows[i][j] != -d[j] * rows[j][i]:
                    raise ValueError("matrix is not skew-symmetrizable by the given vector")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "skew_symmetrizer", d)

    def __setattr__(self, name, value):
        raise AttributeError("ExchangeMatrix is immutable")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExchangeMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ExchangeMatrix({[list(r) for r in self.entries]})"

    def arrows(self):
        """Valued arrows i -> j (0-based) for every positive entry."""
        for i in range(self.rank):
            for j in range(self.rank):
                if self.entries[i][j] > 0:
                    yield ValuedArrow(i, j, (self.entries[i][j], -self.entries[j][i]))

    def permuted(self, perm: Sequence[int]) -> "ExchangeMatrix":
        """Reindex by perm: new position p holds old vertex perm[p]."""
        return ExchangeMatrix(
            [[self.entries[perm[p]][perm[q]] for q in range(self.rank)] for p in range(self.rank)],
            [self.skew_symmetrizer[perm[p]] for p in range(self.rank)],
        )

    def submatrix(self, keep: Sequence[int]) -> "ExchangeMatrix":
        keep = list(keep)
        return ExchangeMatrix(
            [[self.entries[i][j] for j in keep] for i in keep],
            [self.skew_symmetrizer[i] for i in keep],
        )

    def is_acyclic(self) -> bool:
        """True iff the valued quiver has no directed cycle."""
        n = self.rank
        indeg = [0] * n
        for a in self.arrows():
            indeg[a.target] += 1
        ready = [v for v in range(n) if indeg[v] == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for j in range(n):
                if self.entries[v][j] > 0:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        ready.append(j)
        return seen == n

    def topological_order(self):
        """Vertices sorted so that every arrow goes forward; smallest-first ties."""
        n = self.rank
        indeg = [0] * n
        for a in self.arrows():
            indeg[a.target] += 1
        import heapq

        ready = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for j in range(n):
                if self.entries[v][j] > 0:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        heapq.heappush(ready, j)
        if len(order) != n:
            raise ValueError("quiver has a directed cycle")
        return order


def _find_symmetrizer(rows) -> Tuple[int, ...]:
    """Positive integer d with d_i*M_ij = -d_j*M_ji, or raise ValueError."""
    n = len(rows)
    weight = [Fraction(0)] * n
    for comp_root in range(n):
        if weight[comp_root]:
            continue
        weight[comp_root] = Fraction(1)
        stack = [comp_root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0 and rows[j][i] == 0:
                    continue
                if (rows[i][j] == 0) != (rows[j][i] == 0) or rows[i][j] * rows[j][i] > 0:
                    raise ValueError("matrix is not sign-skew-symmetric")
                w = weight[i] * abs(rows[i][j]) / abs(rows[j][i])
                if weight[j] == 0:
                    weight[j] = w
                    stack.append(j)
                elif weight[j] != w:
                    raise ValueError("matrix is not skew-symmetrizable")
    scale = lcm(*(w.denominator for w in weight)) if n else 1
    d = [int(w * scale) for w in weight]
    if n:
        g = 0
        for x in d:
            g = gcd(g, x)
        d = [x // g for x in d]
    return tuple(d)


def from_dynkin(t: DynkinType, orientation=None) -> ExchangeMatrix:
    """Block-diagonal exchange matrix realizing t.

    The default orientation is bipartite: vertices are 2-colored along each
    tree and edges run from color 0 to color 1, so every vertex is a source
    or a sink (which knitting relies on).  An explicit orientation is a list
    of (source, target) pairs of 1-based global vertex indices; each pair
    must be an edge of the diagram.
    """
    edges = []  # (i, j, w_ij, w_ji) with global 0-based vertices
    offset = 0
    for comp in t.components:
        for i, j, wij, wji in _component_edges(comp.family, comp.rank):
            edges.append((i + offset, j + offset, wij, wji))
        offset += comp.rank
    n = t.rank

    adjacency = {v: [] for v in range(n)}
    for idx, (i, j, _, _) in enumerate(edges):
        adjacency[i].append((j, idx))
        adjacency[j].append((i, idx))

    # bipartite 2-coloring; orientation runs color 0 -> color 1
    color = [None] * n
    for root in range(n):
        if color[root] is not None:
            continue
        color[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, _ in adjacency[v]:
                if color[w] is None:
                    color[w] = 1 - color[v]
                    stack.append(w)

    directed = {}
    for idx, (i, j, _, _) in enumerate(edges):
        directed[idx] = (i, j) if color[i] == 0 else (j, i)

    if orientation is not None:
        edge_lookup = {frozenset((i, j)): idx for idx, (i, j, _, _) in enumerate(edges)}
        for src, dst in orientation:
            key = frozenset((src - 1, dst - 1))
            if key not in edge_lookup:
                raise ValueError(f"({src}, {dst}) is not an edge of {t}")
            directed[edge_lookup[key]] = (src - 1, dst - 1)

    entries = [[0] * n for _ in range(n)]
    for idx, (i, j, wij, wji) in enumerate(edges):
        src, dst = directed[idx]
        if (src, dst) == (i, j):
            entries[i][j] = wij
            entries[j][i] = -wji
        else:
            entries[j][i] = wji
            entries[i][j] = -wij
    return ExchangeMatrix(entries)


def mutate_matrix(m: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation at vertex k (0-based); an involution."""
    n = m.rank
    if not 0 <= k < n:
        raise ValueError(f"vertex {k} out of range")
    old = m.entries
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                new[i][j] = -old[i][j]
            elif old[i][k] > 0 and old[k][j] > 0:
                new[i][j] = old[i][j] + old[i][k] * old[k][j]
            elif old[i][k] < 0 and old[k][j] < 0:
                new[i][j] = old[i][j] - old[i][k] * old[k][j]
            else:
                new[i][j] = old[i][j]
    return ExchangeMatrix(new, m.skew_symmetrizer)


def _classify_component(vertices, edges):
    """Match one connected valued graph against the Dynkin list.

    vertices: list of vertex ids; edges: list of (i, j, w_ij, w_ji).
    Returns a (family, rank) pair or None.
    """
    n = len(vertices)
    if len(edges) != n - 1:
        return None  # not a tree
    if n == 1:
        return ("A", 1)

    adjacency = {v: [] for v in vertices}
    for i, j, wij, wji in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    degrees = {v: len(adjacency[v]) for v in vertices}
    weighted = [(i, j, wij, wji) for i, j, wij, wji in edges if (wij, wji) != (1, 1)]

    if not weighted:
        if all(d <= 2 for d in degrees.values()):
            return ("A", n)
        branch = [v for v, d in degrees.items() if d == 3]
        if len(branch) != 1 or any(d > 3 for d in degrees.values()):
            return None
        arms = []
        for w in adjacency[branch[0]]:
            length, prev, cur = 1, branch[0], w
            while degrees[cur] == 2:
                nxt = [u for u in adjacency[cur] if u != prev][0]
                prev, cur = cur, nxt
                length += 1
            if degrees[cur] != 1:
                return None
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return ("D", n)
        if arms == [1, 2, 2]:
            return ("E", 6)
        if arms == [1, 2, 3]:
            return ("E", 7)
        if arms == [1, 2, 4]:
            return ("E", 8)
        return None

    if len(weighted) != 1 or any(d > 2 for d in degrees.values()):
        return None
    i, j, wij, wji = weighted[0]
    pair = tuple(sorted((wij, wji)))
    if pair == (1, 3):
        return ("G", 2) if n == 2 else None
    if pair != (1, 2):
        return None
    if n == 2:
        return ("B", 2)
    leaf_side = [v for v, w in ((i, j), (j, i)) if degrees[v] == 1]
    if not leaf_side:
        # interior double edge; only the middle edge of a 4-chain qualifies
        return ("F", 4) if n == 4 and degrees[i] == 2 and degrees[j] == 2 else None
    tip = leaf_side[0]
    w_out = wij if tip == i else wji  # value read from the tip toward the chain
    return ("B", n) if w_out == 2 else ("C", n)


def recognize_dynkin(m: ExchangeMatrix) -> Optional[DynkinType]:
    """The DynkinType of the underlying valued graph, or None if not Dynkin.

    Orientation is forgotten; any orientation of a Dynkin diagram is
    accepted.  Cyclic quivers and edges with value products > 3 yield None.
    """
    n = m.rank
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if m.entries[i][j] != 0:
                edges.append((i, j, abs(m.entries[i][j]), abs(m.entries[j][i])))

    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j, _, _ in edges:
        parent[find(i)] = find(j)

    comps = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)

    found = []
    for vs in comps.values():
        vset = set(vs)
        comp_edges = [e for e in edges if e[0] in vset]
        result = _classify_component(vs, comp_edges)
        if result is None:
            return None
        found.append(result)
    return DynkinType(found)


def to_json_dict(m: ExchangeMatrix) -> dict:
    """The documented quiver schema with 1-based vertices."""
    return {
        "rank": m.rank,
        "arrows": [
            {"from": a.source + 1, "to": a.target + 1, "b": a.values[0], "c": a.values[1]}
            for a in m.arrows()
        ],
    }


def from_json_dict(data: dict) -> ExchangeMatrix:
    n = int(data["rank"])
    entries = [[0] * n for _ in range(n)]
    for arrow in data.get("arrows", []):
        i, j = int(arrow["from"]) - 1, int(arrow["to"]) - 1
        b, c = int(arrow["b"]), int(arrow["c"])
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError(f"bad arrow {arrow}")
        if b <= 0 or c <= 0:
            raise ValueError(f"arrow values must be positive: {arrow}")
        entries[i][j] = b
        entries[j][i] = -c
    return ExchangeMatrix(entries)


def load_quiver(path: str) -> ExchangeMatrix:
    with open(path) as fh:
        return from_json_dict(json.load(fh))

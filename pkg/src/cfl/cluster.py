"""Seeds, seed mutation, and exhaustive enumeration of finite seed patterns.

Cluster variables are named globally by their canonical Laurent expansion in
the fixed initial cluster; a registry interns these expansions and hands out
stable integer ids (1..r are the initial variables).  Seeds are deduplicated
by their set of variable ids, which determines the seed in finite type; the
matrices are checked for consistency whenever two routes reach one cluster.

Enumeration refuses to compute Laurent expansions before certifying finite
type: the matrix mutation class is explored first, and any reachable seed
matrix with |M_ij * M_ji| >= 4 proves infinite type (the finite type
criterion), halting cheaply before coefficients can blow up.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import laurent
from .laurent import LaurentPoly
from .quiver import DynkinType, ExchangeMatrix, mutate_matrix, recognize_dynkin

DEFAULT_CAP = 100000


class NotFiniteError(RuntimeError):
    """Raised when an operation requires a finite seed pattern."""


class ClusterRegistry:
    """Append-only store of canonical cluster-variable expansions."""

    def __init__(self, rank: int):
        self.rank = rank
        self.variables: List[LaurentPoly] = []
        self.index: Dict[LaurentPoly, int] = {}
        for i in range(rank):
            self.intern(LaurentPoly.variable(rank, i))

    def intern(self, poly: LaurentPoly) -> int:
        """Return the id for poly, assigning the next id on first sight."""
        found = self.index.get(poly)
        if found is not None:
            return found
        self.variables.append(poly)
        vid = len(self.variables)
        self.index[poly] = vid
        return vid

    def poly(self, vid: int) -> LaurentPoly:
        return self.variables[vid - 1]

    def __len__(self) -> int:
        return len(self.variables)

    def __contains__(self, poly: LaurentPoly) -> bool:
        return poly in self.index


@dataclass(frozen=True)
class Seed:
    """An ordered cluster of variable ids together with its exchange matrix."""

    cluster: Tuple[int, ...]
    matrix: ExchangeMatrix

    @property
    def key(self) -> frozenset:
        return frozenset(self.cluster)

    def normalized_matrix(self) -> ExchangeMatrix:
        """The matrix permuted to ascending id order, for cross-route checks."""
        perm = sorted(range(len(self.cluster)), key=lambda p: self.cluster[p])
        return self.matrix.permuted(perm)


class Subcluster:
    """A sorted set of variable ids contained in at least one cluster."""

    __slots__ = ("ids",)

    def __init__(self, ids, pattern: "SeedPattern"):
        sorted_ids = tuple(sorted(set(ids)))
        if not pattern.contains_cluster_superset(sorted_ids):
            raise ValueError(f"{sorted_ids} is not contained in any enumerated cluster")
        object.__setattr__(self, "ids", sorted_ids)

    def __setattr__(self, name, value):
        raise AttributeError("Subcluster is immutable")

    def __len__(self):
        return len(self.ids)

    def __iter__(self):
        return iter(self.ids)

    def __contains__(self, vid):
        return vid in self.ids

    def __eq__(self, other):
        return isinstance(other, Subcluster) and self.ids == other.ids

    def __le__(self, other):
        return set(self.ids) <= set(other.ids)

    def __hash__(self):
        return hash(self.ids)

    def __repr__(self):
        return f"Subcluster{self.ids}"


class SeedPattern:
    """The mutation closure of one seed: seeds, exchange edges, finiteness."""

    def __init__(self, rank: int):
        self.rank = rank
        self.seeds: List[Seed] = []
        self.seed_ids: Dict[frozenset, int] = {}
        self.edges: Dict[Tuple[int, int], int] = {}
        self.finite = False
        self.reason: Optional[str] = None
        self._chart_polys: Dict[int, Dict[int, LaurentPoly]] = {}
        self._chart_values: Dict[int, Dict[int, Fraction]] = {}

    def _add_seed(self, seed: Seed) -> int:
        sid = len(self.seeds)
        self.seeds.append(seed)
        self.seed_ids[seed.key] = sid
        return sid

    def seed_of_cluster(self, ids) -> int:
        """Seed index of the cluster with exactly these variable ids."""
        key = frozenset(ids)
        if key not in self.seed_ids:
            raise KeyError(f"no cluster {sorted(key)} in the pattern")
        return self.seed_ids[key]

    def clusters(self) -> List[Tuple[int, ...]]:
        return [tuple(sorted(s.cluster)) for s in self.seeds]

    def contains_cluster_superset(self, ids) -> bool:
        need = set(ids)
        return any(need <= key for key in self.seed_ids)

    def containing_seeds(self, ids) -> List[int]:
        need = set(ids)
        return [sid for sid, seed in enumerate(self.seeds) if need <= seed.key]

    def subcluster(self, ids) -> Subcluster:
        return Subcluster(ids, self)

    def require_finite(self):
        if not self.finite:
            raise NotFiniteError(self.reason or "pattern is not finite")


def exchange_polynomial(reg: ClusterRegistry, seed: Seed, k: int) -> LaurentPoly:
    """The binomial exchanged against variable k: prod(in) + prod(out)."""
    rank = seed.matrix.rank
    pos = LaurentPoly.one(reg.rank)
    neg = LaurentPoly.one(reg.rank)
    for i in range(rank):
        e = seed.matrix[i, k]
        if e > 0:
            pos = laurent.mul(pos, laurent.power(reg.poly(seed.cluster[i]), e))
        elif e < 0:
            neg = laurent.mul(neg, laurent.power(reg.poly(seed.cluster[i]), -e))
    return laurent.add(pos, neg)


def mutate_seed(reg: ClusterRegistry, seed: Seed, k: int) -> Seed:
    """Replace the variable at position k via the exchange relation.

    The new expansion is interned in the registry; an existing id is reused
    when the canonical form is already known.  Inexact division here means
    the exchange relation failed, which is a hard invariant violation.
    """
    if not 0 <= k < len(seed.cluster):
        raise ValueError(f"mutation position {k} out of range")
    new_poly = laurent.exact_div(exchange_polynomial(reg, seed, k), reg.poly(seed.cluster[k]))
    new_id = reg.intern(new_poly)
    new_cluster = list(seed.cluster)
    new_cluster[k] = new_id
    return Seed(tuple(new_cluster), mutate_matrix(seed.matrix, k))


def certify_finite_type(matrix: ExchangeMatrix, cap: int = DEFAULT_CAP) -> Tuple[bool, str]:
    """Explore the matrix mutation class before touching polynomials.

    Returns (True, "") when the class closes under mutation with every
    product |M_ij * M_ji| <= 3, which certifies finite type.  A product >= 4
    anywhere in the class certifies infinite type; exceeding the cap is
    reported as undecided-within-cap.
    """
    seen = {matrix.entries}
    queue = deque([matrix])
    while queue:
        m = queue.popleft()
        n = m.rank
        for i in range(n):
            for j in range(i + 1, n):
                if abs(m.entries[i][j] * m.entries[j][i]) >= 4:
                    return False, "infinite type: a reachable exchange matrix has |b*c| >= 4"
        for k in range(n):
            nxt = mutate_matrix(m, k)
            if nxt.entries not in seen:
                if len(seen) >= cap:
                    return False, f"not finite within cap ({cap} matrices explored)"
                seen.add(nxt.entries)
                queue.append(nxt)
    return True, ""


def enumerate_pattern(
    matrix: ExchangeMatrix, cap: int = DEFAULT_CAP
) -> Tuple[SeedPattern, ClusterRegistry]:
    """Breadth-first closure of the initial seed under all mutations.

    Seeds are deduplicated by cluster-id set; mutation positions are visited
    in ascending order, so ids and seed numbering are reproducible.  When the
    finiteness guard trips, the returned pattern has finite=False and only
    the initial seed.
    """
    rank = matrix.rank
    reg = ClusterRegistry(rank)
    pattern = SeedPattern(rank)
    initial = Seed(tuple(range(1, rank + 1)), matrix)
    pattern._add_seed(initial)

    ok, why = certify_finite_type(matrix, cap)
    if not ok:
        pattern.finite = False
        pattern.reason = why
        return pattern, reg

    queue = deque([0])
    while queue:
        sid = queue.popleft()
        seed = pattern.seeds[sid]
        for k in range(rank):
            if (sid, k) in pattern.edges:
                continue
            new_seed = mutate_seed(reg, seed, k)
            tid = pattern.seed_ids.get(new_seed.key)
            if tid is None:
                if len(pattern.seeds) >= cap:
                    pattern.finite = False
                    pattern.reason = f"not finite within cap ({cap} seeds explored)"
                    return pattern, reg
                tid = pattern._add_seed(new_seed)
                queue.append(tid)
            else:
                known = pattern.seeds[tid]
                if known.normalized_matrix() != new_seed.normalized_matrix():
                    raise AssertionError(
                        f"two seeds share the cluster {sorted(new_seed.key)} "
                        "but carry different matrices"
                    )
            # the reverse mutation sits at the stored seed's position of the new variable
            back = pattern.seeds[tid].cluster.index(new_seed.cluster[k])
            pattern.edges[(sid, k)] = tid
            pattern.edges[(tid, back)] = sid
    pattern.finite = True
    return pattern, reg


def enumerate_from_type(t: DynkinType, cap: int = DEFAULT_CAP):
    from .quiver import from_dynkin

    return enumerate_pattern(from_dynkin(t), cap)


# -- chart replays -----------------------------------------------------------
#
# Both the Laurent expansions and the exact numeric values of every cluster
# variable in an arbitrary chart are computed the same way: walk the already
# enumerated exchange graph starting from the chart's seed, redo each
# exchange in the target arithmetic, and record the value attached to each
# variable id the first time its position is reached.


def _replay(pattern: SeedPattern, chart_seed: int, initial_values, ops):
    add_, mul_, pow_, div_, one = ops
    pattern.require_finite()
    rank = pattern.rank
    base = pattern.seeds[chart_seed]
    values = {base.cluster[i]: initial_values[i] for i in range(rank)}
    state = {chart_seed: list(initial_values)}
    queue = deque([chart_seed])
    while queue:
        sid = queue.popleft()
        seed = pattern.seeds[sid]
        vals = state[sid]
        for k in range(rank):
            tid = pattern.edges[(sid, k)]
            if tid in state:
                continue
            target_seed = pattern.seeds[tid]
            pos = one
            neg = one
            for i in range(rank):
                e = seed.matrix[i, k]
                if e > 0:
                    pos = mul_(pos, pow_(vals[i], e))
                elif e < 0:
                    neg = mul_(neg, pow_(vals[i], -e))
            new_val = div_(add_(pos, neg), vals[k])
            # the stored seed may order its cluster differently than this route
            new_id = next(iter(target_seed.key - seed.key))
            by_id = {seed.cluster[i]: vals[i] for i in range(rank) if i != k}
            by_id[new_id] = new_val
            state[tid] = [by_id[vid] for vid in target_seed.cluster]
            if new_id not in values:
                values[new_id] = new_val
            queue.append(tid)
    return values


def expansions_in_chart(
    reg: ClusterRegistry, pattern: SeedPattern, chart_seed: int
) -> Dict[int, LaurentPoly]:
    """Laurent expansion of every variable id in the given chart's cluster.

    Coordinate i of the chart is the i-th entry of that seed's cluster.
    Results are cached on the pattern.
    """
    cached = pattern._chart_polys.get(chart_seed)
    if cached is not None:
        return cached
    rank = pattern.rank
    initial = [LaurentPoly.variable(rank, i) for i in range(rank)]
    ops = (laurent.add, laurent.mul, laurent.power, laurent.exact_div, LaurentPoly.one(rank))
    values = _replay(pattern, chart_seed, initial, ops)
    pattern._chart_polys[chart_seed] = values
    return values


def values_at_chart_point(
    reg: ClusterRegistry, pattern: SeedPattern, chart_seed: int, coords
) -> Dict[int, Fraction]:
    """Exact value of every variable at the point with these chart coordinates."""
    initial = [Fraction(c) for c in coords]
    if len(initial) != pattern.rank:
        raise ValueError("coordinate count must equal the rank")
    if any(c <= 0 for c in initial):
        raise ValueError("chart coordinates must be strictly positive")
    ops = (
        lambda a, b: a + b,
        lambda a, b: a * b,
        lambda a, e: a**e,
        lambda a, b: a / b,
        Fraction(1),
    )
    return _replay(pattern, chart_seed, initial, ops)


def _div_exactly(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError("unitary-point replay left the integers")
    return q


def unitary_values(reg: ClusterRegistry, pattern: SeedPattern, chart_seed: int) -> Dict[int, int]:
    """Values of all variables at the all-ones point of the chart (cached).

    These are the coefficient sums of the chart expansions, so the replay
    runs in plain exact integers.
    """
    cached = pattern._chart_values.get(chart_seed)
    if cached is None:
        ops = (lambda a, b: a + b, lambda a, b: a * b, lambda a, e: a**e, _div_exactly, 1)
        cached = _replay(pattern, chart_seed, [1] * pattern.rank, ops)
        pattern._chart_values[chart_seed] = cached
    return cached


def corner_bounds(reg: ClusterRegistry, pattern: SeedPattern) -> Tuple[int, ...]:
    """Per-coordinate maxima of the initial variables over all unitary points.

    Every frieze's initial slice consists of initial-variable values at a
    superunitary point, and those coordinates peak at the corners (the
    unitary points), so these are natural per-coordinate search bounds.
    """
    pattern.require_finite()
    best = [1] * pattern.rank
    for sid in range(len(pattern.seeds)):
        vals = unitary_values(reg, pattern, sid)
        for i in range(pattern.rank):
            if vals[i + 1] > best[i]:
                best[i] = vals[i + 1]
    return tuple(best)


# -- subclusters and deletion -------------------------------------------------


def enumerate_subclusters(pattern: SeedPattern) -> List[Subcluster]:
    """All subsets of all clusters, deduplicated, empty set included."""
    pattern.require_finite()
    seen = set()
    for seed in pattern.seeds:
        ids = sorted(seed.key)
        for size in range(len(ids) + 1):
            for combo in itertools.combinations(ids, size):
                seen.add(combo)
    out = []
    for combo in sorted(seen, key=lambda c: (len(c), c)):
        sub = Subcluster.__new__(Subcluster)
        object.__setattr__(sub, "ids", combo)
        out.append(sub)
    return out


def is_compatible(pattern: SeedPattern, c: Subcluster, vid: int) -> bool:
    """True iff c together with vid still sits inside some cluster."""
    return pattern.contains_cluster_superset(set(c.ids) | {vid})


@dataclass(frozen=True)
class Deletion:
    """The result of deleting a subcluster: a smaller exchange matrix plus its type."""

    matrix: ExchangeMatrix
    dynkin_type: DynkinType
    host_seed: int
    kept_positions: Tuple[int, ...]


def delete_subcluster(pattern: SeedPattern, c: Subcluster) -> Deletion:
    """Delete c from a containing seed whose remaining quiver is a Dynkin tree.

    Any containing cluster induces the same cluster algebra; seeds are
    scanned in enumeration order until the induced submatrix is recognizable
    (some seeds induce cyclic quivers, which carry the same algebra but no
    Dynkin shape).
    """
    pattern.require_finite()
    hosts = pattern.containing_seeds(c.ids)
    if not hosts:
        raise ValueError(f"{c} is not a subcluster of the pattern")
    for sid in hosts:
        seed = pattern.seeds[sid]
        kept = tuple(p for p in range(pattern.rank) if seed.cluster[p] not in c)
        sub = seed.matrix.submatrix(kept)
        t = recognize_dynkin(sub)
        if t is not None:
            return Deletion(sub, t, sid, kept)
    raise RuntimeError(f"no containing seed of {c} induces a Dynkin quiver")


def deletion_types_over_hosts(pattern: SeedPattern, c: Subcluster) -> List[Optional[DynkinType]]:
    """recognize_dynkin of the induced submatrix for every containing seed."""
    out = []
    for sid in pattern.containing_seeds(c.ids):
        seed = pattern.seeds[sid]
        kept = [p for p in range(pattern.rank) if seed.cluster[p] not in c]
        out.append(recognize_dynkin(seed.matrix.submatrix(kept)))
    return out


def deletion_map_image(
    reg: ClusterRegistry, pattern: SeedPattern, c: Subcluster, vid: int
) -> LaurentPoly:
    """The image of a variable under the deletion map of c.

    Expands the variable in a chart containing c and sets the c-coordinates
    to 1; the result is a Laurent polynomial in the deletion's initial
    cluster (the remaining chart coordinates, in chart order).
    """
    deletion = delete_subcluster(pattern, c)
    seed = pattern.seeds[deletion.host_seed]
    expansion = expansions_in_chart(reg, pattern, deletion.host_seed)[vid]
    drop = [p for p in range(pattern.rank) if seed.cluster[p] in c]
    return laurent.substitute_ones(expansion, drop)


def pattern_to_cache_dict(reg: ClusterRegistry, pattern: SeedPattern) -> dict:
    """Full-fidelity JSON form used by the cache (not the CLI output schema)."""
    return {
        "rank": pattern.rank,
        "finite": pattern.finite,
        "reason": pattern.reason,
        "variables": [laurent.dump_terms(p) for p in reg.variables],
        "seeds": [
            {"cluster": list(s.cluster), "matrix": [list(r) for r in s.matrix.entries],
             "symmetrizer": list(s.matrix.skew_symmetrizer)}
            for s in pattern.seeds
        ],
        "edges": [[sid, k, tid] for (sid, k), tid in sorted(pattern.edges.items())],
    }


def pattern_from_cache_dict(data: dict) -> Tuple[SeedPattern, ClusterRegistry]:
    rank = int(data["rank"])
    reg = ClusterRegistry(rank)
    for terms in data["variables"][rank:]:
        reg.intern(laurent.parse_terms(rank, terms))
    pattern = SeedPattern(rank)
    pattern.finite = bool(data["finite"])
    pattern.reason = data.get("reason")
    for item in data["seeds"]:
        matrix = ExchangeMatrix(item["matrix"], item.get("symmetrizer"))
        pattern._add_seed(Seed(tuple(item["cluster"]), matrix))
    for sid, k, tid in data["edges"]:
        pattern.edges[(sid, k)] = tid
    return pattern, reg

"""Repetition quivers, mesh relations, knitting, and frieze enumeration.

A frieze assigns one value per vertex of the repetition quiver of an acyclic
valued quiver; the mesh relation ties each value to its translate.  Values
may be integers, exact rationals, or Laurent polynomials (the general
frieze); one kind per frieze.  Only a fundamental domain (period x rows) is
stored.

Positive integral friezes are enumerated by depth-first assignment of the
initial slice.  Every source or sink vertex imposes a divisibility
constraint on its closed neighborhood, which prunes the search long before
any knitting happens; surviving slices are knitted forward with exact
integer arithmetic until the slice recurs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import cluster as cl
from . import laurent
from . import region
from . import typecomb
from .cluster import ClusterRegistry, SeedPattern, Subcluster
from .laurent import LaurentPoly, RationalPoint
from .quiver import DynkinType, ExchangeMatrix, recognize_dynkin


class KnittingError(RuntimeError):
    """A mesh relation could not be inverted in the value kind."""


class TypeMismatchError(ValueError):
    """The inner frieze does not live on the deletion produced by the subcluster."""


def resolve_bounds(
    reg: ClusterRegistry, pattern: SeedPattern, requested: Optional[int] = None
) -> Tuple[int, ...]:
    """Per-coordinate search bounds for frieze enumeration.

    A user-supplied bound applies uniformly.  Otherwise each coordinate is
    bounded by its largest value over all unitary points: the corners of the
    superunitary region dominate each coordinate, so no frieze's initial
    slice can exceed them.  The closed-form cross-check stays in place as a
    loud diagnostic on this choice.
    """
    if requested:
        return (requested,) * pattern.rank
    return cl.corner_bounds(reg, pattern)


class RepetitionQuiver:
    """The translation quiver on Z x Q0 built from an acyclic valued quiver.

    For an arrow i -> j with values (b, c) in the base there are solid
    arrows (m,i) -> (m,j) valued (b, c) and dashed arrows (m,j) -> (m+1,i)
    valued (c, b).  The translation tau sends (m,i) to (m-1,i).
    """

    def __init__(self, base: ExchangeMatrix):
        if not base.is_acyclic():
            raise ValueError("repetition quivers need an acyclic base quiver")
        self.base = base

    @property
    def rank(self) -> int:
        return self.base.rank

    def tau(self, vertex):
        m, i = vertex
        return (m - 1, i)

    def arrows_into(self, vertex):
        """((m', j), exponent) for each arrow into (m, i), exponent = first value."""
        m, i = vertex
        out = []
        for j in range(self.base.rank):
            e = self.base[j, i]
            if e > 0:  # solid (m,j) -> (m,i) with values (b,c), b = M[j][i]
                out.append(((m, j), e))
            elif e < 0:  # dashed (m-1,j) -> (m,i) with values (c,b), c = -M[j][i]
                out.append(((m - 1, j), -e))
        return out


def _value_ops(sample):
    if isinstance(sample, LaurentPoly):
        one = LaurentPoly.one(sample.rank)
        return (laurent.add, laurent.mul, laurent.power, laurent.exact_div, one)
    return (
        lambda a, b: a + b,
        lambda a, b: a * b,
        lambda a, e: a**e,
        lambda a, b: Fraction(a) / Fraction(b),
        1,
    )


class Frieze:
    """Values on one period of a repetition quiver.

    values maps (m, i) with 0 <= m < period to the value at that vertex; the
    stored period is minimized on construction so equal friezes compare
    equal as dictionaries.  Translations of a frieze are distinct friezes.
    """

    def __init__(self, base: ExchangeMatrix, period: int, values: Dict[Tuple[int, int], object],
                 base_type: Optional[DynkinType] = None):
        if period < 1:
            raise ValueError("period must be at least 1")
        self.base = base
        self.base_type = base_type if base_type is not None else recognize_dynkin(base)
        rank = base.rank
        full = {}
        for m in range(period):
            for i in range(rank):
                if (m, i) not in values:
                    raise ValueError(f"missing value at ({m}, {i})")
                full[(m, i)] = values[(m, i)]
        # minimize the period
        for p in range(1, period + 1):
            if period % p:
                continue
            if all(full[(m, i)] == full[(m % p, i)] for m in range(period) for i in range(rank)):
                period = p
                full = {(m, i): full[(m, i)] for m in range(p) for i in range(rank)}
                break
        self.period = period
        self.values = full

    def value(self, m: int, i: int):
        return self.values[(m % self.period, i)]

    def slice(self, m: int) -> tuple:
        return tuple(self.value(m, i) for i in range(self.base.rank))

    def rows(self) -> List[list]:
        """One list per base vertex covering a fundamental domain."""
        return [[self.value(m, i) for m in range(self.period)] for i in range(self.base.rank)]

    def is_integral(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1)
                   for v in self.values.values())

    def is_positive(self) -> bool:
        return all(not isinstance(v, LaurentPoly) and v > 0 for v in self.values.values())

    def mesh_check(self) -> bool:
        """Verify a(v)*a(tau v) == 1 + prod over arrows into v, on the whole domain."""
        rank = self.base.rank
        if rank == 0:
            return True
        add_, mul_, pow_, _, one = _value_ops(next(iter(self.values.values())))
        for m in range(self.period):
            for v in range(rank):
                rhs = one
                for i in range(rank):
                    e = self.base[i, v]
                    if e > 0:
                        rhs = mul_(rhs, pow_(self.value(m, i), e))
                    elif e < 0:
                        rhs = mul_(rhs, pow_(self.value(m - 1, i), -e))
                lhs = mul_(self.value(m, v), self.value(m - 1, v))
                if lhs != add_(one, rhs):
                    return False
        return True

    def key(self):
        return (self.period, tuple(sorted(self.values.items())))

    def __eq__(self, other):
        return isinstance(other, Frieze) and self.base == other.base and self.key() == other.key()

    def __hash__(self):
        return hash((self.base, self.key()))

    def __repr__(self):
        return f"Frieze(period={self.period}, rows={self.rows()!r})"


def _period_cap(base: ExchangeMatrix) -> Optional[int]:
    t = recognize_dynkin(base)
    if t is None:
        return None
    if t.is_empty():
        return 4
    spans = [typecomb.coxeter(DynkinType([(c.family, c.rank)])) + 2 for c in t.components]
    return 4 * lcm(*spans)


def knit(base: ExchangeMatrix, initial: Sequence, max_columns: Optional[int] = None) -> Frieze:
    """Propagate the initial slice through the mesh relations until it recurs.

    Values are propagated column by column in topological order of the base
    quiver; the relation at each vertex is solved for the new value.  The
    slice of a finite type frieze always recurs, and the column cap (four
    times the slice span of the type) turns any failure to recur into a hard
    error instead of a hang.
    """
    rank = base.rank
    if len(initial) != rank:
        raise ValueError("initial slice must assign one value per base vertex")
    cap = max_columns if max_columns is not None else _period_cap(base)
    if cap is None:
        raise ValueError("base quiver is not Dynkin; pass max_columns explicitly")
    order = base.topological_order()
    add_, mul_, pow_, div_, one = _value_ops(initial[0] if rank else 1)
    for v in initial:
        if isinstance(v, LaurentPoly):
            if v.is_zero():
                raise KnittingError("initial values must be invertible")
        elif v <= 0:
            raise KnittingError("initial values must be positive")

    slices = [tuple(initial)]
    values: Dict[Tuple[int, int], object] = {(0, i): initial[i] for i in range(rank)}
    for m in range(1, cap + 1):
        prev = slices[-1]
        cur: List[object] = [None] * rank
        for v in order:
            rhs = one
            for i in range(rank):
                e = base[i, v]
                if e > 0:
                    rhs = mul_(rhs, pow_(cur[i], e))
                elif e < 0:
                    rhs = mul_(rhs, pow_(prev[i], -e))
            try:
                cur[v] = div_(add_(one, rhs), prev[v])
            except laurent.InexactDivisionError as exc:
                raise KnittingError(f"mesh relation not invertible at column {m}") from exc
            if not isinstance(cur[v], LaurentPoly) and cur[v] <= 0:
                raise KnittingError(f"non-positive value at column {m}")
        if tuple(cur) == slices[0]:
            return Frieze(base, m, values)
        slices.append(tuple(cur))
        for i in range(rank):
            values[(m, i)] = cur[i]
    raise KnittingError(f"slice did not recur within {cap} columns")


def general_frieze(reg: ClusterRegistry, pattern: SeedPattern) -> Frieze:
    """The frieze valued in the cluster algebra itself, on the initial seed.

    Every vertex carries a cluster variable's canonical expansion; in Dynkin
    type the set of values is the whole registry.
    """
    pattern.require_finite()
    base = pattern.seeds[0].matrix
    if not base.is_acyclic():
        raise ValueError("the initial seed's quiver must be acyclic to knit")
    initial = [reg.poly(i) for i in range(1, pattern.rank + 1)]
    return knit(base, initial)


@dataclass(frozen=True)
class FriezePoint:
    """A totally positive point sending every cluster variable into Z>=1.

    Stored in initial-chart coordinates regardless of how it was built.
    """

    point: region.PositivePoint

    @property
    def coords(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.point.coords.coords)


def frieze_point(reg: ClusterRegistry, pattern: SeedPattern, chart: int, coords) -> FriezePoint:
    """Validate integrality of every variable and normalize to the initial chart."""
    pattern.require_finite()
    pt = region.point(pattern, chart, coords)
    values = region.all_variable_values(reg, pattern, pt)
    for vid, val in values.items():
        if val.denominator != 1 or val < 1:
            raise ValueError(f"variable {vid} takes value {val}; not a frieze point")
    initial_coords = [values[vid] for vid in range(1, pattern.rank + 1)]
    return FriezePoint(region.PositivePoint(0, RationalPoint(initial_coords)))


def specialize(gf: Frieze, fp: FriezePoint) -> Frieze:
    """Evaluate every Laurent value of the general frieze at the frieze point."""
    pt = fp.point.coords
    values = {}
    for key, poly in gf.values.items():
        val = laurent.evaluate(poly, pt)
        assert val.denominator == 1 and val >= 1, "specialization left Z>=1"
        values[key] = int(val)
    return Frieze(gf.base, gf.period, values, base_type=gf.base_type)


# -- exhaustive enumeration ----------------------------------------------------


def _neighbor_exponents(base: ExchangeMatrix):
    """exps[v] = [(w, |M[w][v]|)] over neighbors w of v in the underlying graph."""
    rank = base.rank
    return [
        [(w, abs(base[w, v])) for w in range(rank) if base[w, v] != 0]
        for v in range(rank)
    ]


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _assignment_order(neighbors, bounds) -> List[int]:
    """A tree-walk order that closes neighborhood constraints early.

    Root at the widest coordinate, then depth-first with small subtrees
    first, so leaves produce divisor-generated candidates almost
    immediately and interior constraints close as soon as possible.
    Disconnected components are appended in the same style.
    """
    rank = len(bounds)
    seen = [False] * rank
    order: List[int] = []

    def subtree_size(v, parent):
        return 1 + sum(subtree_size(w, v) for w, _ in neighbors[v] if w != parent and not seen[w])

    def walk(v, parent):
        seen[v] = True
        order.append(v)
        kids = [w for w, _ in neighbors[v] if w != parent and not seen[w]]
        for w in sorted(kids, key=lambda w: (subtree_size(w, v), w)):
            walk(w, v)

    roots = sorted(range(rank), key=lambda v: (-bounds[v], v))
    for r in roots:
        if not seen[r]:
            walk(r, -1)
    return order


def _knit_int(base: ExchangeMatrix, order, initial, cap: int, min_value: int):
    """Forward integer knitting; None when a value leaves Z>=min_value."""
    rank = base.rank
    slices = [tuple(initial)]
    for m in range(1, cap + 1):
        prev = slices[-1]
        cur = [0] * rank
        for v in order:
            num = 1
            for i in range(rank):
                e = base[i, v]
                if e > 0:
                    num *= cur[i] ** e
                elif e < 0:
                    num *= prev[i] ** (-e)
            q, r = divmod(1 + num, prev[v])
            if r or q < min_value:
                return None
            cur[v] = q
        if tuple(cur) == slices[0]:
            return slices
        slices.append(tuple(cur))
    raise KnittingError(f"slice did not recur within {cap} columns")


def enumerate_friezes(
    reg: ClusterRegistry,
    pattern: SeedPattern,
    bound: Optional[int] = None,
    min_value: int = 1,
    first_range: Optional[Tuple[int, int]] = None,
) -> List[Frieze]:
    """All friezes with values in Z>=min_value and initial slice within bounds.

    Initial-slice values are assigned depth-first along a tree walk.  Each
    source or sink vertex u whose closed neighborhood is assigned imposes
        vals[u] divides 1 + prod over neighbors w of vals[w]^|M[w][u]|
    with quotient >= min_value (the adjacent column's value at u).  When the
    newly assigned vertex itself closes the constraint its candidates are
    divisors of that product; when it is the last missing neighbor of a
    previously assigned vertex and enters with exponent 1, candidates form
    an arithmetic progression.  Everything else falls back to a filtered
    scan.  Surviving full slices are knitted to confirm.  Results are sorted
    by initial slice, so the output is deterministic.

    first_range restricts the first assigned coordinate (used to split work
    across processes).
    """
    pattern.require_finite()
    base = pattern.seeds[0].matrix
    if not base.is_acyclic():
        raise ValueError("enumeration knits over the initial seed, which must be acyclic")
    rank = pattern.rank
    bounds = resolve_bounds(reg, pattern, bound)
    cap = _period_cap(base)
    if cap is None:
        cap = 4 * (2 * len(reg) + 2)  # generous fallback for non-Dynkin finite patterns
    topo = base.topological_order()
    neighbors = _neighbor_exponents(base)
    is_endpoint = [
        all(base[w, v] > 0 for w, _ in neighbors[v]) or all(base[w, v] < 0 for w, _ in neighbors[v])
        for v in range(rank)
    ]
    order = _assignment_order(neighbors, bounds)
    position = {v: p for p, v in enumerate(order)}
    # constraints close at the step where the last vertex of {u} + nb(u) lands
    closes_at: List[List[int]] = [[] for _ in range(rank)]
    for u in range(rank):
        if neighbors[u] and not is_endpoint[u]:
            continue  # no single invertible mesh relation pins u's neighborhood
        ready = max([position[u]] + [position[w] for w, _ in neighbors[u]])
        closes_at[ready].append(u)

    vals = [0] * rank
    found: List[Frieze] = []

    def constraint_ok(u: int) -> bool:
        prod = 1
        for w, e in neighbors[u]:
            prod *= vals[w] ** e
        q, r = divmod(1 + prod, vals[u])
        return r == 0 and q >= min_value

    def candidates_for(p: int) -> list:
        v = order[p]
        lo, hi = min_value, bounds[v]
        if p == 0 and first_range is not None:
            lo, hi = max(lo, first_range[0]), min(hi, first_range[1])
        gen = None
        for u in closes_at[p]:
            if u == v:
                prod = 1
                for w, e in neighbors[v]:
                    prod *= vals[w] ** e
                gen = [d for d in _divisors(1 + prod) if lo <= d <= hi]
                break
        if gen is None:
            for u in closes_at[p]:
                if u == v:
                    continue
                e_v = next(e for w, e in neighbors[u] if w == v)
                if e_v != 1:
                    continue
                c = 1
                for w, e in neighbors[u]:
                    if w != v:
                        c *= vals[w] ** e
                m = vals[u]
                if m == 1:
                    continue
                if gcd(c, m) != 1:
                    return []  # 1 + c*v can never be divisible by m
                v0 = (-pow(c, -1, m)) % m
                if v0 == 0:
                    v0 = m
                start = v0 if v0 >= lo else v0 + ((lo - v0 + m - 1) // m) * m
                gen = list(range(start, hi + 1, m))
                break
        if gen is None:
            gen = range(lo, hi + 1)
        return gen

    def assign(p: int):
        if p == rank:
            slices = _knit_int(base, topo, list(vals), cap, min_value)
            if slices is not None:
                values = {(m, i): s[i] for m, s in enumerate(slices) for i in range(rank)}
                found.append(Frieze(base, len(slices), values))
            return
        v = order[p]
        checks = closes_at[p]
        for value in candidates_for(p):
            vals[v] = value
            if all(constraint_ok(u) for u in checks):
                assign(p + 1)
        vals[v] = 0

    assign(0)
    found.sort(key=lambda f: f.slice(0))
    return found


def _parallel_worker(payload) -> List[Tuple[int, tuple]]:
    """Rebuild the pattern from plain data and return friezes as primitives."""
    pattern_dict, bound, min_value, lo, hi = payload
    pattern, reg = cl.pattern_from_cache_dict(pattern_dict)
    friezes = enumerate_friezes(reg, pattern, bound, min_value, first_range=(lo, hi))
    return [(f.period, tuple(f.slice(m) for m in range(f.period))) for f in friezes]


def enumerate_friezes_parallel(
    reg: ClusterRegistry,
    pattern: SeedPattern,
    bound: Optional[int] = None,
    min_value: int = 1,
    jobs: int = 2,
) -> List[Frieze]:
    """Split enumeration over the first slice coordinate across processes.

    Branches are independent and their result sets are merged and re-sorted,
    so the output matches the sequential order exactly.
    """
    from concurrent.futures import ProcessPoolExecutor

    pattern.require_finite()
    rank = pattern.rank
    if rank == 0 or jobs <= 1:
        return enumerate_friezes(reg, pattern, bound, min_value)
    top = max(resolve_bounds(reg, pattern, bound))
    pattern_dict = cl.pattern_to_cache_dict(reg, pattern)
    span = top - min_value + 1
    jobs = min(jobs, span)
    edges = [min_value + (span * j) // jobs for j in range(jobs)] + [top + 1]
    payloads = [(pattern_dict, bound, min_value, edges[j], edges[j + 1] - 1) for j in range(jobs)]
    base = pattern.seeds[0].matrix
    results = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_parallel_worker, payloads):
            results.extend(chunk)
    results.sort(key=lambda pr: pr[1])
    out = []
    for period, slices in results:
        values = {(m, i): slices[m][i] for m in range(period) for i in range(rank)}
        out.append(Frieze(base, period, values))
    return out


def bound_saturated(friezes: List[Frieze], bound: int) -> bool:
    """True when some accepted initial slice touches the bound (likely incomplete)."""
    return any(v == bound for f in friezes for v in f.slice(0))


def classify_frieze(reg: ClusterRegistry, pattern: SeedPattern, f: Frieze):
    """(face label, is_unitary) of the frieze point behind an integral frieze."""
    if f.base != pattern.seeds[0].matrix:
        raise ValueError("frieze must be knitted over the pattern's initial seed")
    fp = frieze_point(reg, pattern, 0, [f.value(0, i) for i in range(pattern.rank)])
    label = region.superunitary_membership(reg, pattern, fp.point)
    assert label is not None, "frieze points are superunitary"
    is_unitary = frozenset(label.subcluster.ids) in pattern.seed_ids
    return label, is_unitary


def unitary_extension(
    reg: ClusterRegistry, pattern: SeedPattern, c: Subcluster, inner: Frieze
) -> Frieze:
    """Extend a frieze of the deletion of c to a frieze that is 1 on c.

    The inner frieze must be knitted over the exact submatrix returned by
    deleting c (same vertex order); its initial slice fills the non-c
    coordinates of the host chart, c is pinned to 1, and the resulting point
    is knitted in the initial chart.
    """
    pattern.require_finite()
    deletion = cl.delete_subcluster(pattern, c)
    if inner.base.rank != deletion.matrix.rank or (
        inner.base_type != deletion.dynkin_type
    ):
        raise TypeMismatchError(
            f"inner frieze has type {inner.base_type}, deletion of {sorted(c.ids)} "
            f"has type {deletion.dynkin_type}"
        )
    if inner.base != deletion.matrix:
        raise TypeMismatchError("inner frieze must be knitted over the deletion's own quiver")

    host = pattern.seeds[deletion.host_seed]
    coords = []
    for p in range(pattern.rank):
        if host.cluster[p] in c:
            coords.append(1)
        else:
            coords.append(inner.value(0, deletion.kept_positions.index(p)))
    fp = frieze_point(reg, pattern, deletion.host_seed, coords)
    return knit(pattern.seeds[0].matrix, list(fp.coords))


def to_json_dict(f: Frieze) -> dict:
    """{"type": ..., "period": p, "rows": [...]} with rows in base vertex order."""
    rows = f.rows()
    if not f.is_integral():
        raise ValueError("only integral friezes have a JSON form")
    return {
        "type": str(f.base_type) if f.base_type is not None else "custom",
        "period": f.period,
        "rows": [[int(v) for v in row] for row in rows],
    }

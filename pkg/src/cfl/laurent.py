"""Exact sparse Laurent polynomial arithmetic over the integers.

A Laurent polynomial in r variables is stored as a dictionary mapping
exponent tuples (length r, entries may be negative) to nonzero integer
coefficients.  The zero polynomial has an empty term map.  This canonical
form makes equality of polynomials a dictionary comparison, which is what
lets them serve as global names for cluster variables.

Evaluation is done with ``fractions.Fraction`` so that "equals 1" questions
are decided exactly; no floating point enters the core.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Tuple

Exponent = Tuple[int, ...]


class RankMismatchError(ValueError):
    """Raised when two operands live in different ambient variable counts."""


class InexactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder.

    Exchange relations always divide exactly, so hitting this means either a
    bug or non-Laurent input; callers must abort, never truncate.
    """


class LaurentPoly:
    """An immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` maps exponent tuples to nonzero ints; ``rank`` is the number of
    ambient variables.  Instances hash by their canonical term map, so equal
    polynomials are interchangeable as dictionary keys.
    """

    __slots__ = ("rank", "terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Exponent, int]):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        clean = {}
        for exp, coeff in terms.items():
            if len(exp) != rank:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {rank}")
            if coeff != 0:
                clean[tuple(exp)] = coeff
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rank: int, terms: dict) -> "LaurentPoly":
        # internal constructor: terms must already be canonical
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(rank: int) -> "LaurentPoly":
        return LaurentPoly(rank, {})

    @staticmethod
    def constant(rank: int, value: int) -> "LaurentPoly":
        if value == 0:
            return LaurentPoly.zero(rank)
        return LaurentPoly(rank, {(0,) * rank: value})

    @staticmethod
    def variable(rank: int, index: int) -> "LaurentPoly":
        """The polynomial x_{index+1} (0-based index into the variables)."""
        if not 0 <= index < rank:
            raise ValueError(f"variable index {index} out of range for rank {rank}")
        exp = [0] * rank
        exp[index] = 1
        return LaurentPoly(rank, {tuple(exp): 1})

    @staticmethod
    def one(rank: int) -> "LaurentPoly":
        return LaurentPoly.constant(rank, 1)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.rank: 1}

    def is_positive(self) -> bool:
        """True iff every stored coefficient is positive (zero counts as vacuous)."""
        return all(c > 0 for c in self.terms.values())

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.rank == other.rank
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.rank, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.rank}, {render(self)!r})"


class RationalPoint:
    """A strictly positive exact rational point of the ambient orthant."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        vals = tuple(Fraction(c) for c in coords)
        if any(v <= 0 for v in vals):
            raise ValueError("all coordinates must be strictly positive")
        object.__setattr__(self, "coords", vals)

    def __setattr__(self, name, value):
        raise AttributeError("RationalPoint is immutable")

    @property
    def rank(self) -> int:
        return len(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"RationalPoint({list(self.coords)})"


def _check_ranks(a: LaurentPoly, b: LaurentPoly):
    if a.rank != b.rank:
        raise RankMismatchError(f"rank mismatch: {a.rank} vs {b.rank}")


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Termwise sum in canonical form."""
    _check_ranks(a, b)
    out = dict(a.terms)
    get = out.get
    for exp, coeff in b.terms.items():
        s = get(exp, 0) + coeff
        if s == 0:
            del out[exp]
        else:
            out[exp] = s
    return LaurentPoly._raw(a.rank, out)


def neg(a: LaurentPoly) -> LaurentPoly:
    return LaurentPoly._raw(a.rank, {e: -c for e, c in a.terms.items()})


def sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return add(a, neg(b))


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Distributive product in canonical form."""
    _check_ranks(a, b)
    out: dict = {}
    get = out.get
    bterms = list(b.terms.items())
    for e1, c1 in a.terms.items():
        for e2, c2 in bterms:
            exp = tuple(map(int.__add__, e1, e2))
            s = get(exp, 0) + c1 * c2
            if s == 0:
                del out[exp]
            else:
                out[exp] = s
    return LaurentPoly._raw(a.rank, out)


def monomial_mul(a: LaurentPoly, exp: Exponent, coeff: int = 1) -> LaurentPoly:
    """Multiply by a single monomial (cheaper than building a one-term poly)."""
    return LaurentPoly._raw(
        a.rank, {tuple(map(int.__add__, e, exp)): c * coeff for e, c in a.terms.items()}
    )


def power(a: LaurentPoly, n: int) -> LaurentPoly:
    """a**n for n >= 0, by repeated squaring."""
    if n < 0:
        raise ValueError("negative powers of general polynomials are not defined")
    result = LaurentPoly.one(a.rank)
    base = a
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base) if n > 1 else base
        n >>= 1
    return result


def _min_corner(p: LaurentPoly) -> Exponent:
    its = iter(p.terms)
    first = next(its)
    lo = list(first)
    for exp in its:
        for i, e in enumerate(exp):
            if e < lo[i]:
                lo[i] = e
    return tuple(lo)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return q with q * den == num exactly, or raise InexactDivisionError.

    Both operands are shifted by monomials so they become ordinary
    polynomials (the shift of an exact quotient is again a polynomial, since
    per-variable minimal degrees add under multiplication over Z).  Division
    then runs leading-term-first in lexicographic order, which is a well
    order on nonnegative exponents, so it terminates; any step that needs a
    negative exponent or a non-dividing coefficient proves inexactness.
    """
    _check_ranks(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.rank)

    num_lo = _min_corner(num)
    den_lo = _min_corner(den)
    # shift monomial applied to the quotient at the end: num_lo - den_lo
    shift = tuple(a - b for a, b in zip(num_lo, den_lo))

    rem = {tuple(a - b for a, b in zip(e, num_lo)): c for e, c in num.terms.items()}
    dterms = sorted(
        ((tuple(a - b for a, b in zip(e, den_lo)), c) for e, c in den.terms.items()),
        reverse=True,
    )
    lead_exp, lead_coeff = dterms[0]
    tail = dterms[1:]
    quota: dict = {}

    # lazy max-heap over remaining exponents (negated tuples so heapq pops the
    # lexicographic maximum first); stale entries are skipped on pop
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    while rem:
        nexp = heap[0]
        rexp = tuple(-x for x in nexp)
        if rexp not in rem:
            heapq.heappop(heap)
            continue
        rcoeff = rem.pop(rexp)
        heapq.heappop(heap)
        qexp = tuple(a - b for a, b in zip(rexp, lead_exp))
        if any(e < 0 for e in qexp):
            raise InexactDivisionError(f"({num}) is not divisible by ({den})")
        qcoeff, residue = divmod(rcoeff, lead_coeff)
        if residue:
            raise InexactDivisionError(f"({num}) is not divisible by ({den})")
        quota[qexp] = qcoeff
        for dexp, dcoeff in tail:
            exp = tuple(map(int.__add__, qexp, dexp))
            old = rem.get(exp)
            s = (old if old is not None else 0) - qcoeff * dcoeff
            if s == 0:
                if old is not None:
                    del rem[exp]
            else:
                rem[exp] = s
                if old is None:
                    heapq.heappush(heap, tuple(-x for x in exp))

    return LaurentPoly._raw(
        num.rank, {tuple(map(int.__add__, e, shift)): c for e, c in quota.items()}
    )


def evaluate(p: LaurentPoly, pt: RationalPoint) -> Fraction:
    """Exact value of p at a strictly positive rational point."""
    if p.rank != pt.rank:
        raise RankMismatchError(f"rank mismatch: poly {p.rank} vs point {pt.rank}")
    total = Fraction(0)
    for exp, coeff in p.terms.items():
        term = Fraction(coeff)
        for base, e in zip(pt.coords, exp):
            if e:
                term *= base ** e
        total += term
    return total


def substitute_ones(p: LaurentPoly, indices) -> LaurentPoly:
    """Set the variables at the given 0-based indices to 1.

    The result lives in the remaining variables, in their original order.
    Used by the deletion map, which specializes a subcluster to 1.
    """
    drop = set(indices)
    keep = [i for i in range(p.rank) if i not in drop]
    out: dict = {}
    for exp, coeff in p.terms.items():
        new = tuple(exp[i] for i in keep)
        s = out.get(new, 0) + coeff
        if s == 0:
            out.pop(new, None)
        else:
            out[new] = s
    return LaurentPoly(len(keep), out)


def coefficient_sum(p: LaurentPoly) -> int:
    return p.coefficient_sum()


def is_positive(p: LaurentPoly) -> bool:
    return p.is_positive()


def is_monomial(p: LaurentPoly) -> bool:
    return p.is_monomial()


def render(p: LaurentPoly) -> str:
    """Render like "3*x1^-1*x2^2 + 1", descending lexicographic term order."""
    if not p.terms:
        return "0"
    pieces = []
    for exp in sorted(p.terms, reverse=True):
        coeff = p.terms[exp]
        factors = [f"x{i + 1}" + (f"^{e}" if e != 1 else "") for i, e in enumerate(exp) if e != 0]
        if not factors:
            body = str(abs(coeff))
        elif abs(coeff) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(coeff))] + factors)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def parse_terms(rank: int, terms: Iterable) -> LaurentPoly:
    """Build a polynomial from [[exponent list], coeff] pairs (JSON round-trip)."""
    return LaurentPoly(rank, {tuple(e): int(c) for e, c in terms})


def dump_terms(p: LaurentPoly) -> list:
    """JSON-friendly inverse of parse_terms, in descending term order."""
    return [[list(e), p.terms[e]] for e in sorted(p.terms, reverse=True)]

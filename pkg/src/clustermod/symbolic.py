"""Exact arithmetic: multivariate Laurent polynomials over Z and tropical semifield elements.

Variables form an extensible alphabet of (family, index) pairs; coefficients are
unbounded Python integers.  Everything here is immutable and pure.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ConfigurationError,
    InexactDivisionError,
    NotSubtractionFreeError,
)

# Canonical family order used for printing, hashing and term comparison.
_FAMILIES = ("x", "f", "Y", "z", "y", "t")
_FAMILY_ORDER = {name: k for k, name in enumerate(_FAMILIES)}

_DIV_STEP_CAP = 1_000_000  # guards non-termination when an "exact" division is not


class VarId:
    """A formal variable: family in {x, f, Y, z, y, t}, integer index tuple.

    Immutable by convention; hash and sort key are precomputed since these
    sit on the hot path of every polynomial operation.
    """

    __slots__ = ("family", "index", "sort_key", "_hash")

    def __init__(self, family: str, index: tuple[int, ...]):
        if family not in _FAMILY_ORDER:
            raise ConfigurationError(f"unknown variable family {family!r}")
        self.family = family
        self.index = tuple(index)
        self.sort_key = (_FAMILY_ORDER[family], self.index)
        self._hash = hash(self.sort_key)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarId) and self.sort_key == other.sort_key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "VarId") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return "%s[%s]" % (self.family, ",".join(str(c) for c in self.index))

    def __repr__(self) -> str:
        return f"VarId({self.family!r}, {self.index!r})"


@functools.lru_cache(maxsize=None)
def _var(family: str, index: tuple[int, ...]) -> VarId:
    return VarId(family, index)


def xvar(*index: int) -> VarId:
    return _var("x", tuple(index))


def fvar(*index: int) -> VarId:
    return _var("f", tuple(index))


def Yvar(i: int, r: int) -> VarId:
    return _var("Y", (i, r))


def zvar(i: int, p: int) -> VarId:
    return _var("z", (i, p))


def ycoef(*index: int) -> VarId:
    """Principal coefficient variable attached to a mutable vertex."""
    return _var("y", tuple(index))


def tvar(*index: int) -> VarId:
    return _var("t", tuple(index))


class Monomial:
    """Exponent map VarId -> nonzero integer; the multiplicative carrier of all formulas."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exps: Mapping[VarId, int] | Iterable[tuple[VarId, int]] = ()):
        if isinstance(exps, Mapping):
            pairs = exps.items()
        else:
            pairs = exps
        merged: dict[VarId, int] = {}
        for v, e in pairs:
            e = merged.get(v, 0) + e
            if e:
                merged[v] = e
            elif v in merged:
                del merged[v]
        items = tuple(sorted(merged.items(), key=lambda p: p[0].sort_key))
        self._items = items
        self._hash = hash(items)

    @staticmethod
    def one() -> "Monomial":
        return _MONOMIAL_ONE

    @staticmethod
    def of(v: VarId, e: int = 1) -> "Monomial":
        return Monomial(((v, e),))

    @classmethod
    def _from_sorted(cls, items: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._items = items
        m._hash = hash(items)
        return m

    @property
    def items(self) -> tuple[tuple[VarId, int], ...]:
        return self._items

    def exponent(self, v: VarId) -> int:
        for w, e in self._items:
            if w == v:
                return e
        return 0

    def variables(self) -> tuple[VarId, ...]:
        return tuple(v for v, _ in self._items)

    @property
    def is_one(self) -> bool:
        return not self._items

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.is_one:
            return other
        if other.is_one:
            return self
        # merge of two sorted exponent lists
        a, b = self._items, other._items
        na, nb = len(a), len(b)
        ia = ib = 0
        out = []
        while ia < na and ib < nb:
            va, vb = a[ia][0], b[ib][0]
            if va.sort_key < vb.sort_key:
                out.append(a[ia])
                ia += 1
            elif vb.sort_key < va.sort_key:
                out.append(b[ib])
                ib += 1
            else:
                e = a[ia][1] + b[ib][1]
                if e:
                    out.append((va, e))
                ia += 1
                ib += 1
        out.extend(a[ia:])
        out.extend(b[ib:])
        return Monomial._from_sorted(tuple(out))

    def inverse(self) -> "Monomial":
        return Monomial(tuple((v, -e) for v, e in self._items))

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return Monomial.one()
        return Monomial(tuple((v, n * e) for v, e in self._items))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for v, e in self._items:
            parts.append(str(v) if e == 1 else f"{v}^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


_MONOMIAL_ONE = Monomial()


def _cmp_monomials(a: Monomial, b: Monomial) -> int:
    """Lexicographic order over the canonical variable order; absent exponent = 0.

    Compatible with multiplication, so leading terms multiply; this makes
    exact division by leading-term reduction valid.
    """
    ia, ib = a.items, b.items
    na, nb = len(ia), len(ib)
    pa = pb = 0
    while pa < na or pb < nb:
        if pa < na and (pb >= nb or ia[pa][0].sort_key < ib[pb][0].sort_key):
            ea, eb = ia[pa][1], 0
            pa += 1
        elif pb < nb and (pa >= na or ib[pb][0].sort_key < ia[pa][0].sort_key):
            ea, eb = 0, ib[pb][1]
            pb += 1
        else:
            ea, eb = ia[pa][1], ib[pb][1]
            pa += 1
            pb += 1
        if ea != eb:
            return 1 if ea > eb else -1
    return 0


monomial_sort_key = functools.cmp_to_key(_cmp_monomials)


class LaurentPoly:
    """Exact Laurent polynomial: map Monomial -> nonzero int, canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, int] | Iterable[tuple[Monomial, int]] = ()):
        if isinstance(terms, Mapping):
            pairs = terms.items()
        else:
            pairs = terms
        d: dict[Monomial, int] = {}
        for m, c in pairs:
            c = d.get(m, 0) + c
            if c:
                d[m] = c
            elif m in d:
                del d[m]
        self._terms = d

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({Monomial.one(): 1})

    @staticmethod
    def constant(c: int) -> "LaurentPoly":
        return LaurentPoly({Monomial.one(): c}) if c else LaurentPoly()

    @staticmethod
    def var(v: VarId, e: int = 1) -> "LaurentPoly":
        return LaurentPoly({Monomial.of(v, e): 1})

    @staticmethod
    def from_monomial(m: Monomial, c: int = 1) -> "LaurentPoly":
        return LaurentPoly({m: c}) if c else LaurentPoly()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_one(self) -> bool:
        return self._terms == {Monomial.one(): 1}

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms sorted with the leading (largest) monomial first."""
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def constant_term(self) -> int:
        return self._terms.get(Monomial.one(), 0)

    def variables(self) -> set[VarId]:
        out: set[VarId] = set()
        for m in self._terms:
            out.update(m.variables())
        return out

    def monomial_and_coefficient(self) -> tuple[Monomial, int]:
        if len(self._terms) != 1:
            raise ConfigurationError("polynomial is not a single term")
        return next(iter(self._terms.items()))

    def leading_term(self) -> tuple[Monomial, int]:
        m = max(self._terms, key=monomial_sort_key)
        return m, self._terms[m]

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        d = dict(self._terms)
        for m, c in other._terms.items():
            c = d.get(m, 0) + c
            if c:
                d[m] = c
            else:
                del d[m]
        p = LaurentPoly.__new__(LaurentPoly)
        p._terms = d
        return p

    def __neg__(self) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p._terms = {m: -c for m, c in self._terms.items()}
        return p

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            p = LaurentPoly.__new__(LaurentPoly)
            p._terms = {m: c * other for m, c in self._terms.items()}
            return p
        if isinstance(other, Monomial):
            p = LaurentPoly.__new__(LaurentPoly)
            p._terms = {m * other: c for m, c in self._terms.items()}
            return p
        d: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                c = d.get(m, 0) + c1 * c2
                if c:
                    d[m] = c
                elif m in d:
                    del d[m]
        p = LaurentPoly.__new__(LaurentPoly)
        p._terms = d
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            m, c = self.monomial_and_coefficient()
            if c not in (1, -1):
                raise ConfigurationError("negative power of a non-unit")
            return LaurentPoly.from_monomial(m ** n, c if n % 2 else 1)
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.terms():
            if m.is_one:
                body = str(abs(c))
            elif abs(c) == 1:
                body = str(m)
            else:
                body = f"{abs(c)} {m}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def substitute(p: LaurentPoly, assign: Mapping[VarId, LaurentPoly]) -> LaurentPoly:
    """Ring-homomorphic image of p; unassigned variables map to themselves.

    A variable occurring with a negative exponent must be assigned a monomial
    (invertible) value.
    """
    out = LaurentPoly.zero()
    for m, c in p._terms.items():
        acc = LaurentPoly.constant(c)
        for v, e in m.items:
            img = assign.get(v)
            if img is None:
                acc = acc * Monomial.of(v, e)
                continue
            acc = acc * img ** e
        out = out + acc
    return out


def div_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient q with q*b == a; raises InexactDivisionError otherwise.

    Division by a monomial is always exact in the Laurent ring.  For a general
    divisor the quotient is found by leading-term reduction, valid because the
    term order is compatible with multiplication.
    """
    if b.is_zero:
        raise InexactDivisionError("division by zero")
    if b.is_monomial:
        m, c = b.monomial_and_coefficient()
        inv = m.inverse()
        out: dict[Monomial, int] = {}
        for mm, cc in a._terms.items():
            if cc % c:
                raise InexactDivisionError("coefficient does not divide")
            out[mm * inv] = cc // c
        return LaurentPoly(out)
    if a.is_zero:
        return a
    box = _quotient_box(a, b)
    lt_m, lt_c = b.leading_term()
    q: dict[Monomial, int] = {}
    r = a
    steps = 0
    while not r.is_zero:
        steps += 1
        if steps > _DIV_STEP_CAP:
            raise InexactDivisionError("division did not terminate")
        rm, rc = r.leading_term()
        if rc % lt_c:
            raise InexactDivisionError("leading coefficient does not divide")
        qm = rm / lt_m
        for v, e in qm.items:
            lo, hi = box.get(v, (0, 0))
            if not lo <= e <= hi:
                raise InexactDivisionError("quotient exponent out of range")
        qc = rc // lt_c
        q[qm] = qc
        r = r - b * LaurentPoly.from_monomial(qm, qc)
    return LaurentPoly(q)


def _quotient_box(a: LaurentPoly, b: LaurentPoly) -> dict[VarId, tuple[int, int]]:
    """Per-variable exponent bounds any exact quotient a/b must satisfy.

    Extremal exponents multiply without cancellation over a domain, so
    min_v(q) = min_v(a) - min_v(b) and max_v(q) = max_v(a) - max_v(b).
    An empty range proves inexactness immediately.
    """

    def ranges(p):
        lo: dict[VarId, int] = {}
        hi: dict[VarId, int] = {}
        nterms = 0
        counts: dict[VarId, int] = {}
        for m in p._terms:
            nterms += 1
            for v, e in m.items:
                counts[v] = counts.get(v, 0) + 1
                if v not in lo or e < lo[v]:
                    lo[v] = e
                if v not in hi or e > hi[v]:
                    hi[v] = e
        for v, c in counts.items():
            if c < nterms:  # variable absent from some term: exponent 0 occurs
                lo[v] = min(lo[v], 0)
                hi[v] = max(hi[v], 0)
        return {v: (lo[v], hi[v]) for v in lo}

    ra, rb = ranges(a), ranges(b)
    box = {}
    for v in set(ra) | set(rb):
        alo, ahi = ra.get(v, (0, 0))
        blo, bhi = rb.get(v, (0, 0))
        lo, hi = alo - blo, ahi - bhi
        if lo > hi:
            raise InexactDivisionError(f"no exact quotient: variable {v} range is empty")
        box[v] = (lo, hi)
    return box


@dataclass(frozen=True)
class TropElem:
    """Element of Trop(gens): exponent vector with multiplication = +, oplus = min."""

    gens: tuple[VarId, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.gens) != len(self.exps):
            raise ConfigurationError("generator/exponent length mismatch")

    @staticmethod
    def one(gens: tuple[VarId, ...]) -> "TropElem":
        return TropElem(gens, (0,) * len(gens))

    @staticmethod
    def generator(gens: tuple[VarId, ...], v: VarId, e: int = 1) -> "TropElem":
        return TropElem(gens, tuple(e if g == v else 0 for g in gens))

    @staticmethod
    def from_exponents(gens: tuple[VarId, ...], exps: Mapping[VarId, int]) -> "TropElem":
        unknown = set(exps) - set(gens)
        if unknown:
            raise ConfigurationError(f"exponents on non-generators: {unknown}")
        return TropElem(gens, tuple(exps.get(g, 0) for g in gens))

    def _check(self, other: "TropElem"):
        if self.gens != other.gens:
            raise ConfigurationError("tropical elements over different generator lists")

    @property
    def is_one(self) -> bool:
        return not any(self.exps)

    def exponent(self, v: VarId) -> int:
        return self.exps[self.gens.index(v)]

    def __mul__(self, other: "TropElem") -> "TropElem":
        self._check(other)
        return TropElem(self.gens, tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __add__(self, other: "TropElem") -> "TropElem":
        """Auxiliary addition: componentwise minimum of exponent vectors."""
        self._check(other)
        return TropElem(self.gens, tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def inverse(self) -> "TropElem":
        return TropElem(self.gens, tuple(-a for a in self.exps))

    def __pow__(self, n: int) -> "TropElem":
        return TropElem(self.gens, tuple(n * a for a in self.exps))

    def as_monomial(self) -> Monomial:
        return Monomial({g: e for g, e in zip(self.gens, self.exps) if e})

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly.from_monomial(self.as_monomial())

    def __str__(self) -> str:
        return str(self.as_monomial())


def trop_add(a: TropElem, b: TropElem) -> TropElem:
    return a + b


def eval_tropical(f: LaurentPoly, assign: Mapping[VarId, TropElem]) -> TropElem:
    """Evaluate a subtraction-free Laurent polynomial in a tropical semifield.

    Coefficients are discarded; any negative coefficient is rejected since the
    tropical evaluation of a general expression is not defined term-by-term.
    """
    if f.is_zero:
        raise ConfigurationError("cannot tropically evaluate the zero polynomial")
    total: TropElem | None = None
    for m, c in f._terms.items():
        if c < 0:
            raise NotSubtractionFreeError("polynomial has a negative coefficient")
        val: TropElem | None = None
        for v, e in m.items:
            try:
                factor = assign[v] ** e
            except KeyError:
                raise ConfigurationError(f"no tropical value assigned to {v}") from None
            val = factor if val is None else val * factor
        if val is None:
            gens = next(iter(assign.values())).gens if assign else ()
            val = TropElem.one(tuple(gens))
        total = val if total is None else total + val
    assert total is not None
    return total

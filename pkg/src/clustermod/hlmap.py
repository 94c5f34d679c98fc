"""Monomial dictionary between cluster data and highest l-weight monomials.

All spectral parameters are integers on the lattice of pairs (i, r); dominant
means every exponent is nonnegative.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .cartan import CartanData
from .errors import DomainError, NonDominantError
from .reps import CQObject, RepContext


class YMonomial:
    """Formal monomial in the variables Y_{i,r}: exponent map (i, r) -> nonzero int."""

    __slots__ = ("_items", "_hash")

    def __init__(self, exps: Mapping[tuple[int, int], int] | Iterable = ()):
        if isinstance(exps, Mapping):
            pairs = exps.items()
        else:
            pairs = exps
        d: dict[tuple[int, int], int] = {}
        for key, e in pairs:
            e = d.get(key, 0) + e
            if e:
                d[key] = e
            elif key in d:
                del d[key]
        self._items = tuple(sorted(d.items()))
        self._hash = hash(self._items)

    @staticmethod
    def one() -> "YMonomial":
        return YMonomial()

    @staticmethod
    def gen(i: int, r: int, e: int = 1) -> "YMonomial":
        return YMonomial({(i, r): e})

    @property
    def items(self):
        return self._items

    def exponent(self, i: int, r: int) -> int:
        return dict(self._items).get((i, r), 0)

    @property
    def is_one(self) -> bool:
        return not self._items

    @property
    def is_dominant(self) -> bool:
        return all(e >= 0 for _, e in self._items)

    def __mul__(self, other: "YMonomial") -> "YMonomial":
        d = dict(self._items)
        for key, e in other._items:
            e = d.get(key, 0) + e
            if e:
                d[key] = e
            else:
                del d[key]
        return YMonomial(d)

    def __truediv__(self, other: "YMonomial") -> "YMonomial":
        return self * other.inverse()

    def inverse(self) -> "YMonomial":
        return YMonomial(tuple((k, -e) for k, e in self._items))

    def __pow__(self, n: int) -> "YMonomial":
        if n == 0:
            return YMonomial()
        return YMonomial(tuple((k, n * e) for k, e in self._items))

    def __eq__(self, other) -> bool:
        return isinstance(other, YMonomial) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for (i, r), e in self._items:
            base = f"Y[{i},{r}]"
            parts.append(base if e == 1 else f"{base}^{e}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"YMonomial({self})"

    def to_json(self):
        return [[i, r, e] for (i, r), e in self._items]


def z_monomial(i: int, p: int, xi: dict[int, int]) -> YMonomial:
    """Initial cluster variable z_{i,p} = prod of Y_{i,p+2k} up to height xi(i)."""
    if (p - xi[i]) % 2:
        raise DomainError(f"spectral parameter {p} off the lattice of column {i}")
    if p > xi[i]:
        raise DomainError(f"z variable needs p <= xi({i}) = {xi[i]}, got {p}")
    return YMonomial({(i, q): 1 for q in range(p, xi[i] + 1, 2)})


def kr_monomial(i: int, k: int, r: int) -> YMonomial:
    """Highest weight of the Kirillov-Reshetikhin module with k factors from Y_{i,r}."""
    if k < 0:
        raise DomainError("KR length must be >= 0")
    return YMonomial({(i, r + 2 * j): 1 for j in range(k)})


def uv_monomials(i: int, l: int, xi: dict[int, int]) -> tuple[YMonomial, YMonomial]:
    """The frozen-pair monomials u_i(l) = z_{i,xi-2l+2}/z_{i,xi} and v_i(l) = z_{i,xi-2l}."""
    if l < 1:
        raise DomainError("level must be >= 1")
    u = z_monomial(i, xi[i] - 2 * l + 2, xi) / z_monomial(i, xi[i], xi)
    v = z_monomial(i, xi[i] - 2 * l, xi)
    return u, v


def a_monomial(i: int, r: int, cartan: CartanData) -> YMonomial:
    """A_{i,r} = Y_{i,r+1} Y_{i,r-1} prod_{j ~ i} Y_{j,r}^{-1}."""
    exps = {(i, r + 1): 1, (i, r - 1): 1}
    for j in cartan.neighbors(i):
        exps[(j, r)] = -1
    return YMonomial(exps)


def yhat_monomial(i: int, r: int, cartan: CartanData) -> YMonomial:
    """The hat-variable at lattice point (i, r): the inverse of A_{i,r-1}."""
    return a_monomial(i, r - 1, cartan).inverse()


def psi(objs, repctx: RepContext, l: int) -> YMonomial:
    """Highest l-weight monomial of the cluster module attached to a rigid object.

    Accepts a single CQObject or an iterable (a direct sum); multiplicative over
    summands.  The result must be dominant; anything else signals a convention
    error somewhere upstream.
    """
    if isinstance(objs, CQObject):
        objs = (objs,)
    if l < 1:
        raise DomainError("level must be >= 1")
    xi = repctx.xi
    out = YMonomial.one()
    for obj in objs:
        g, s = repctx.extended_g(obj)
        for i in repctx.cartan.vertices:
            gi = g[i - 1]
            if gi:
                out = out * z_monomial(i, xi[i] - 2 * l + 2, xi) ** gi
            si = s[i - 1]
            if si:
                u, v = uv_monomials(i, l, xi)
                out = out * (u * v) ** si
    if not out.is_dominant:
        raise NonDominantError(f"psi produced non-dominant monomial {out}")
    return out


@dataclass(frozen=True)
class HwSource:
    """What hw extraction needs from an engine record: g-tilde plus label maps."""

    gtilde: tuple[int, ...]
    mut_labels: tuple[tuple[int, int], ...]
    gen_labels: tuple[tuple[int, int], ...]


def hw_extract(source: HwSource, xi: dict[int, int]) -> YMonomial:
    """Expand z^{g-tilde} into Y-variables; the result must be dominant."""
    n = len(source.mut_labels)
    out = YMonomial.one()
    for (i, r), e in zip(source.mut_labels, source.gtilde[:n]):
        if e:
            out = out * z_monomial(i, r, xi) ** e
    for (i, r), e in zip(source.gen_labels, source.gtilde[n:]):
        if e:
            out = out * z_monomial(i, r, xi) ** e
    if not out.is_dominant:
        raise NonDominantError(f"hw extraction produced non-dominant monomial {out}")
    return out


def hw_source_from_record(record, ctx) -> HwSource:
    """Adapter from an engine ClusterVarRecord + SeedContext over a grid quiver."""
    if any(v.r is None for v in ctx.mutables) or any(len(g.index) != 2 for g in ctx.gens):
        raise DomainError("hw extraction requires a grid-labeled seed")
    mut_labels = tuple((v.i, v.r) for v in ctx.mutables)
    gen_labels = tuple((g.index[0], g.index[1]) for g in ctx.gens)
    return HwSource(tuple(record.gtilde), mut_labels, gen_labels)

"""Seeds over a tropical coefficient semifield, with principal-coefficient tracking.

Every seed carries two parallel data sets per mutable position:

* the ambient cluster variable (exact Laurent expansion in the initial
  variables, coefficients = monomials in the frozen generators) and the
  ambient tropical coefficient;
* the principal-coefficient expansion and coefficient, from which the
  F-polynomial, g-vector and C-matrix are read off.

Extended g-vectors are maintained by the sign-rule recursion and re-derived
from scratch (homogeneous degree + tropical evaluation) whenever a variable
enters the registry; a mismatch raises InternalInvariantError.
"""
from __future__ import annotations

import functools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import FrozenVertexError, InternalInvariantError
from .quivers import IceQuiver, Vertex
from .symbolic import (
    LaurentPoly,
    Monomial,
    TropElem,
    VarId,
    div_exact,
    eval_tropical,
    fvar,
    substitute,
    xvar,
    ycoef,
    zvar,
)


def _var_for_vertex(v: Vertex) -> VarId:
    return xvar(v.i) if v.r is None else zvar(v.i, v.r)


def _gen_for_vertex(v: Vertex) -> VarId:
    # frozen companions i' share the generator f_i with their mutable partner
    return fvar(v.i) if v.r is None else zvar(v.i, v.r)


def _ycoef_for_vertex(v: Vertex) -> VarId:
    return ycoef(v.i) if v.r is None else ycoef(v.i, v.r)


@dataclass(frozen=True)
class SeedContext:
    """Fixed data of an initial seed: variable alphabet and ambient semifield."""

    quiver0: IceQuiver
    mutables: tuple[Vertex, ...]
    frozens: tuple[Vertex, ...]
    xvars: tuple[VarId, ...]
    gens: tuple[VarId, ...]
    ycoefs: tuple[VarId, ...]
    pgens: tuple[VarId, ...]
    y0: tuple[TropElem, ...]

    @functools.cached_property
    def mut_index(self) -> dict[Vertex, int]:
        return {v: k for k, v in enumerate(self.mutables)}

    @functools.cached_property
    def xvar_index(self) -> dict[VarId, int]:
        return {v: k for k, v in enumerate(self.xvars)}

    @functools.cached_property
    def ycoef_index(self) -> dict[VarId, int]:
        return {v: k for k, v in enumerate(self.ycoefs)}

    @functools.cached_property
    def b0_cols(self) -> tuple[tuple[int, ...], ...]:
        """Initial exchange-matrix columns restricted to mutable rows."""
        return tuple(
            tuple(self.quiver0.entry(u, v) for u in self.mutables) for v in self.mutables
        )

    @functools.cached_property
    def y0_assign(self) -> dict[VarId, TropElem]:
        return {self.ycoefs[j]: self.y0[j] for j in range(len(self.mutables))}

    def yhat_monomial(self, j: int) -> Monomial:
        """yhat_j = y_j * prod_i x_i^{b_ij} over the initial seed."""
        mon = self.y0[j].as_monomial()
        return mon * Monomial({self.xvars[i]: e for i, e in enumerate(self.b0_cols[j]) if e})


def seed_context(quiver: IceQuiver) -> SeedContext:
    mutables = quiver.mutable_vertices
    frozens = quiver.frozen_vertices
    gen_of = {v: _gen_for_vertex(v) for v in frozens}
    gens = tuple(sorted(set(gen_of.values()), key=lambda g: g.sort_key))
    y0 = []
    for u in mutables:
        exps: dict[VarId, int] = {}
        for v in frozens:
            e = quiver.entry(v, u)
            if e:
                exps[gen_of[v]] = exps.get(gen_of[v], 0) + e
        y0.append(TropElem.from_exponents(gens, exps))
    return SeedContext(
        quiver0=quiver,
        mutables=mutables,
        frozens=frozens,
        xvars=tuple(_var_for_vertex(v) for v in mutables),
        gens=gens,
        ycoefs=tuple(_ycoef_for_vertex(v) for v in mutables),
        pgens=tuple(_ycoef_for_vertex(v) for v in mutables),
        y0=tuple(y0),
    )


@dataclass(frozen=True)
class TermData:
    """One side of an exchange relation: frozen-generator exponents and the
    cluster-variable factors given by their g-vectors with multiplicities."""

    fexp: tuple[int, ...]
    factors: tuple[tuple[tuple[int, ...], int], ...]


@dataclass(frozen=True)
class ExchangeEdge:
    vertex: Vertex
    old_g: tuple[int, ...]
    new_g: tuple[int, ...]
    term1: TermData
    term2: TermData


@dataclass(frozen=True)
class Seed:
    """Labeled seed: quiver, cluster over ZP, coefficient tuple, principal shadow."""

    ctx: SeedContext
    quiver: IceQuiver
    cluster: tuple[LaurentPoly, ...]
    coeffs: tuple[TropElem, ...]
    pcluster: tuple[LaurentPoly, ...]
    pcoeffs: tuple[TropElem, ...]
    gtilde: tuple[tuple[int, ...], ...]

    @staticmethod
    def initial(quiver: IceQuiver, ctx: SeedContext | None = None) -> "Seed":
        ctx = ctx or seed_context(quiver)
        n = len(ctx.mutables)
        m = len(ctx.gens)
        gtilde = []
        for j in range(n):
            vec = [0] * (n + m)
            vec[j] = 1
            gtilde.append(tuple(vec))
        return Seed(
            ctx=ctx,
            quiver=quiver,
            cluster=tuple(LaurentPoly.var(v) for v in ctx.xvars),
            coeffs=ctx.y0,
            pcluster=tuple(LaurentPoly.var(v) for v in ctx.xvars),
            pcoeffs=tuple(TropElem.generator(ctx.pgens, y) for y in ctx.ycoefs),
            gtilde=tuple(gtilde),
        )

    def epsilon(self, k: int) -> int:
        """Common sign of the k-th c-vector column (well defined by sign coherence)."""
        col = self.pcoeffs[k].exps
        pos = any(e > 0 for e in col)
        neg = any(e < 0 for e in col)
        if pos and neg:
            raise InternalInvariantError(f"c-vector column {k} not sign-coherent: {col}")
        if not pos and not neg:
            raise InternalInvariantError(f"c-vector column {k} is zero")
        return 1 if pos else -1

    def c_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Columns are the c-vectors of the coefficient tuple."""
        return tuple(y.exps for y in self.pcoeffs)

    def _mutate_cluster(self, cluster, coeffs, gens, k, bcol):
        one_t = TropElem.one(gens)
        yk = coeffs[k]
        pos = LaurentPoly.one()
        neg = LaurentPoly.one()
        for i, bi in enumerate(bcol):
            if bi > 0:
                pos = pos * cluster[i] ** bi
            elif bi < 0:
                neg = neg * cluster[i] ** (-bi)
        num = yk.as_poly() * pos + neg
        newx = div_exact(num, cluster[k]) * (yk + one_t).inverse().as_monomial()
        new_cluster = list(cluster)
        new_cluster[k] = newx
        new_coeffs = list(coeffs)
        new_coeffs[k] = yk.inverse()
        for j in range(len(cluster)):
            if j == k:
                continue
            bkj = -bcol[j]  # b_{kj} = -b_{jk}
            if bkj > 0:
                new_coeffs[j] = coeffs[j] * yk ** bkj * (yk + one_t) ** (-bkj)
            elif bkj < 0:
                new_coeffs[j] = coeffs[j] * (yk + one_t) ** (-bkj)
        return tuple(new_cluster), tuple(new_coeffs)

    def mutate(self, v: Vertex) -> "Seed":
        return self.mutate_with_edge(v)[0]

    def mutate_with_edge(self, v: Vertex) -> tuple["Seed", ExchangeEdge]:
        ctx = self.ctx
        if v not in ctx.mut_index:
            raise FrozenVertexError(f"mutation at frozen or unknown vertex {v}")
        k = ctx.mut_index[v]
        bcol = tuple(self.quiver.entry(u, v) for u in ctx.mutables)
        cluster, coeffs = self._mutate_cluster(self.cluster, self.coeffs, ctx.gens, k, bcol)
        pcluster, pcoeffs = self._mutate_cluster(self.pcluster, self.pcoeffs, ctx.pgens, k, bcol)

        n = len(ctx.mutables)
        m = len(ctx.gens)
        eps = self.epsilon(k)
        acc = [-x for x in self.gtilde[k]]
        for i, bi in enumerate(bcol):
            w = max(-bi, 0) if eps > 0 else max(bi, 0)
            if w:
                row = self.gtilde[i]
                for t in range(n + m):
                    acc[t] += w * row[t]
        one_t = TropElem.one(ctx.gens)
        yk = self.coeffs[k]
        corr = (yk + one_t).inverse() if eps > 0 else yk * (yk + one_t).inverse()
        for t, e in enumerate(corr.exps):
            acc[n + t] += e
        gtilde = list(self.gtilde)
        gtilde[k] = tuple(acc)

        seed = Seed(ctx, self.quiver.mutate(v), cluster, coeffs, pcluster, pcoeffs, tuple(gtilde))

        # exchange relation x_k x'_k = f1 * prod x_i^{[b_ik]_+} + f2 * prod x_i^{[-b_ik]_+}
        f1 = (yk * (yk + one_t).inverse()).exps
        f2 = (yk + one_t).inverse().exps
        term1 = TermData(
            fexp=f1,
            factors=tuple(
                (self.gtilde[i][:n], bi) for i, bi in enumerate(bcol) if bi > 0
            ),
        )
        term2 = TermData(
            fexp=f2,
            factors=tuple(
                (self.gtilde[i][:n], -bi) for i, bi in enumerate(bcol) if bi < 0
            ),
        )
        edge = ExchangeEdge(
            vertex=v,
            old_g=self.gtilde[k][:n],
            new_g=seed.gtilde[k][:n],
            term1=term1,
            term2=term2,
        )
        return seed, edge

    def key(self) -> tuple:
        """Canonical unlabeled-seed key: sorted multiset of g-vectors."""
        n = len(self.ctx.mutables)
        return tuple(sorted(g[:n] for g in self.gtilde))


@dataclass(frozen=True)
class ClusterVarRecord:
    """Per-variable principal data: expansion, F-polynomial, (extended) g-vector."""

    gvec: tuple[int, ...]
    gtilde: tuple[int, ...]
    fpoly: LaurentPoly
    expansion: LaurentPoly
    denominator: tuple[int, ...]


def make_record(seed: Seed, j: int) -> ClusterVarRecord:
    """Build the record for position j and cross-check all principal invariants."""
    ctx = seed.ctx
    n = len(ctx.mutables)
    pexp = seed.pcluster[j]
    fpoly = substitute(pexp, {v: LaurentPoly.one() for v in ctx.xvars})

    if fpoly.constant_term() != 1:
        raise InternalInvariantError(f"F-polynomial constant term != 1: {fpoly}")
    if any(c <= 0 for _, c in fpoly.terms()):
        raise InternalInvariantError(f"F-polynomial has non-positive coefficient: {fpoly}")

    gdir = _homogeneous_degree(pexp, ctx)
    bottom = tuple(-e for e in eval_tropical(fpoly, ctx.y0_assign).exps)
    gtilde_direct = gdir + bottom
    if gtilde_direct != seed.gtilde[j]:
        raise InternalInvariantError(
            f"extended g-vector recursion disagrees with direct computation: "
            f"{seed.gtilde[j]} vs {gtilde_direct}"
        )

    expansion = seed.cluster[j]
    denom = None
    for mon, _ in expansion.terms():
        vec = [-mon.exponent(x) for x in ctx.xvars]
        denom = vec if denom is None else [max(a, b) for a, b in zip(denom, vec)]
    return ClusterVarRecord(
        gvec=gdir,
        gtilde=gtilde_direct,
        fpoly=fpoly,
        expansion=expansion,
        denominator=tuple(denom),
    )


def _homogeneous_degree(pexp: LaurentPoly, ctx: SeedContext) -> tuple[int, ...]:
    n = len(ctx.mutables)
    deg = None
    for mon, _ in pexp.terms():
        vec = [0] * n
        for v, e in mon.items:
            i = ctx.xvar_index.get(v)
            if i is not None:
                vec[i] += e
                continue
            jj = ctx.ycoef_index.get(v)
            if jj is None:
                raise InternalInvariantError(f"unexpected variable {v} in principal expansion")
            col = ctx.b0_cols[jj]
            for t in range(n):
                vec[t] -= e * col[t]
        vec = tuple(vec)
        if deg is None:
            deg = vec
        elif deg != vec:
            raise InternalInvariantError("principal expansion is not g-homogeneous")
    if deg is None:
        raise InternalInvariantError("zero cluster variable")
    return deg


def separation(record: ClusterVarRecord, ctx: SeedContext) -> LaurentPoly:
    """Reassemble the expansion as x^g / F|_P(y) * F(yhat); must equal the direct one."""
    n = len(ctx.mutables)
    lead = Monomial({ctx.xvars[i]: e for i, e in enumerate(record.gvec[:n]) if e})
    fp = eval_tropical(record.fpoly, ctx.y0_assign)
    lead = lead * fp.inverse().as_monomial()
    yhat = {
        ctx.ycoefs[j]: LaurentPoly.from_monomial(ctx.yhat_monomial(j))
        for j in range(n)
    }
    return substitute(record.fpoly, yhat) * lead


@dataclass
class ExchangeGraph:
    ctx: SeedContext
    seeds: dict
    edges: list[ExchangeEdge]
    registry: dict[tuple[int, ...], ClusterVarRecord]
    exhaustive: bool

    @property
    def seed_count(self) -> int:
        return len(self.seeds)

    @property
    def variable_count(self) -> int:
        return len(self.registry)

    def report_json(self) -> str:
        variables = []
        for g in sorted(self.registry):
            rec = self.registry[g]
            variables.append(
                {
                    "g": list(rec.gvec),
                    "gtilde": list(rec.gtilde),
                    "F": str(rec.fpoly),
                    "denominator": list(rec.denominator),
                }
            )
        return json.dumps(
            {
                "seeds": self.seed_count,
                "edges": len(self.edges),
                "exhaustive": self.exhaustive,
                "variables": variables,
            },
            indent=2,
        )


def enumerate_exchange_graph(seed0: Seed, max_seeds: int = 10**6) -> ExchangeGraph:
    """Deterministic BFS of the exchange graph, deduplicating unlabeled seeds."""
    ctx = seed0.ctx
    key0 = seed0.key()
    seeds = {key0: seed0}
    registry: dict[tuple[int, ...], ClusterVarRecord] = {}
    exhaustive = True

    def register(seed: Seed):
        n = len(ctx.mutables)
        for j in range(len(ctx.mutables)):
            g = seed.gtilde[j][:n]
            if g not in registry:
                registry[g] = make_record(seed, j)

    register(seed0)
    queue = deque([key0])
    edges: dict[tuple, ExchangeEdge] = {}
    while queue:
        key = queue.popleft()
        seed = seeds[key]
        for v in ctx.mutables:
            new_seed, edge = seed.mutate_with_edge(v)
            nk = new_seed.key()
            known = nk in seeds
            if not known:
                if len(seeds) >= max_seeds:
                    exhaustive = False
                    continue
                seeds[nk] = new_seed
                queue.append(nk)
                register(new_seed)
            ekey = (min(key, nk), max(key, nk))
            if ekey not in edges:
                edges[ekey] = edge
    return ExchangeGraph(ctx, seeds, list(edges.values()), registry, exhaustive)


def run_sequence(seed: Seed, vertices: Iterable[Vertex]) -> tuple[Seed, list[ExchangeEdge]]:
    """Apply a mutation sequence, returning the final seed and per-step edges."""
    edges = []
    for v in vertices:
        seed, edge = seed.mutate_with_edge(v)
        edges.append(edge)
    return seed, edges


def seed_json(seed: Seed) -> str:
    return json.dumps(
        {
            "quiver": json.loads(seed.quiver.to_json()),
            "cluster": [str(p) for p in seed.cluster],
            "coefficients": [str(y) for y in seed.coeffs],
        },
        indent=2,
    )

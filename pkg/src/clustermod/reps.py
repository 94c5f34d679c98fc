"""Dynkin quiver representations and the cluster-category combinatorics built on them.

Indecomposables are realized over Q by reflection functors; socles, Hom spaces and
extension dimensions come from exact linear algebra with Fractions.  Objects of the
cluster category are modules (positive roots) plus one shifted projective per vertex.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanData, check_height_function
from .errors import DomainError, InternalInvariantError, ShiftCaseUnsupported
from .quivers import IceQuiver, build_qxi

Matrix = tuple[tuple[Fraction, ...], ...]


def _flip(arrows, k):
    """Reverse every arrow incident to k."""
    return tuple(sorted((t, s) if k in (s, t) else (s, t) for s, t in arrows))


def _mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((Fraction(0),) * ncols for _ in range(nrows))


def _identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def _matmul(a: Matrix, b: Matrix, n: int, m: int, p: int) -> Matrix:
    # a: n x m, b: m x p
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p))
        for i in range(n)
    )


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((rr for rr in range(r, len(mat)) if mat[rr][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for rr in range(len(mat)):
            if rr != r and mat[rr][c] != 0:
                f = mat[rr][c]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _rank(m: Matrix, nrows: int, ncols: int) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    _, pivots = _rref([list(row) for row in m], ncols)
    return len(pivots)


def _null_space(m: Matrix, nrows: int, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0} as length-ncols vectors."""
    if ncols == 0:
        return []
    if nrows == 0:
        return [tuple(Fraction(1) if i == j else Fraction(0) for i in range(ncols)) for j in range(ncols)]
    rref, pivots = _rref([list(row) for row in m], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for row, pc in zip(rref, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def _column_basis(m: Matrix, nrows: int, ncols: int) -> list[tuple[Fraction, ...]]:
    """Independent columns of m, as length-nrows vectors."""
    if nrows == 0 or ncols == 0:
        return []
    _, pivots = _rref([list(row) for row in m], ncols)
    return [tuple(m[r][c] for r in range(nrows)) for c in pivots]


def _solve_matrix(a: Matrix, b: Matrix, nrows: int, acols: int, bcols: int) -> Matrix:
    """Solve a Z = b column by column; a must have full column rank on span(b)."""
    rows = [list(a[r]) + list(b[r]) for r in range(nrows)]
    rref, pivots = _rref(rows, acols + bcols)
    z = [[Fraction(0)] * bcols for _ in range(acols)]
    for row, pc in zip(rref, pivots):
        if pc >= acols:
            raise InternalInvariantError("inconsistent linear system in solve")
        for j in range(bcols):
            z[pc][j] = row[acols + j]
    return _mat(z)


@dataclass(frozen=True)
class QuiverRep:
    """Representation of a Dynkin quiver: dims by vertex (1-based), one matrix per arrow."""

    nverts: int
    dims: tuple[int, ...]
    mats: tuple[tuple[int, int, Matrix], ...]  # (src, tgt, matrix of shape dims[tgt] x dims[src])

    def matrix(self, src: int, tgt: int) -> Matrix:
        for s, t, m in self.mats:
            if s == src and t == tgt:
                return m
        raise DomainError(f"no arrow {src}->{tgt}")


@dataclass(frozen=True)
class CQObject:
    """Indecomposable of the cluster category: a module or a shifted projective."""

    kind: str  # "mod" | "shift"
    dims: tuple[int, ...] = ()
    i: int = 0

    @staticmethod
    def module(dims) -> "CQObject":
        return CQObject("mod", tuple(dims))

    @staticmethod
    def shifted(i: int) -> "CQObject":
        return CQObject("shift", (), i)

    @property
    def is_module(self) -> bool:
        return self.kind == "mod"

    def __str__(self) -> str:
        if self.kind == "shift":
            return f"shp:{self.i}"
        return "mod:" + ",".join(str(d) for d in self.dims)

    @staticmethod
    def parse(text: str) -> "CQObject":
        text = text.strip()
        if text.startswith("shp:"):
            return CQObject.shifted(int(text[4:]))
        if text.startswith("mod:"):
            return CQObject.module(tuple(int(x) for x in text[4:].split(",")))
        raise DomainError(f"cannot parse object spec {text!r}")


def positive_roots(cartan: CartanData) -> tuple[tuple[int, ...], ...]:
    """All positive roots, by reflection closure from the simple roots."""
    n = cartan.rank
    simples = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for v in frontier:
            for k in range(n):
                s = 2 * v[k] - sum(v[j - 1] for j in cartan.neighbors(k + 1))
                w = tuple(v[j] if j != k else v[k] - s for j in range(n))
                if all(x >= 0 for x in w) and w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return tuple(sorted(seen, key=lambda v: (sum(v), v)))


class RepContext:
    """Representation theory of the quiver determined by (cartan, xi)."""

    def __init__(self, cartan: CartanData, xi: dict[int, int]):
        check_height_function(cartan, xi)
        self.cartan = cartan
        self.xi = dict(xi)
        self.n = cartan.rank
        self.qxi: IceQuiver = build_qxi(cartan, xi)
        self.arrows: tuple[tuple[int, int], ...] = tuple(
            sorted((s.i, t.i) for s, t, _ in self.qxi.arrows())
        )
        self.out = {i: tuple(t for s, t in self.arrows if s == i) for i in cartan.vertices}
        self.inn = {i: tuple(s for s, t in self.arrows if t == i) for i in cartan.vertices}
        self._rep_cache: dict[tuple[int, ...], QuiverRep] = {}

    # ---- roots and basic dimension vectors -------------------------------

    @functools.cached_property
    def roots(self) -> tuple[tuple[int, ...], ...]:
        return positive_roots(self.cartan)

    @functools.cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.roots)

    def is_root(self, dims) -> bool:
        return tuple(dims) in self._root_set

    def proj_dims(self, i: int) -> tuple[int, ...]:
        reach = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for w in self.out[v]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        return tuple(1 if j in reach else 0 for j in self.cartan.vertices)

    def inj_dims(self, i: int) -> tuple[int, ...]:
        reach = {i}
        stack = [i]
        while stack:
            v = stack.pop()
            for w in self.inn[v]:
                if w not in reach:
                    reach.add(w)
                    stack.append(w)
        return tuple(1 if j in reach else 0 for j in self.cartan.vertices)

    def indecomposables(self) -> tuple[CQObject, ...]:
        shifts = tuple(CQObject.shifted(i) for i in self.cartan.vertices)
        mods = tuple(CQObject.module(r) for r in self.roots)
        return shifts + mods

    # ---- explicit representations ----------------------------------------

    def simple(self, j: int, arrows=None) -> QuiverRep:
        arrows = self.arrows if arrows is None else arrows
        dims = tuple(1 if v == j else 0 for v in self.cartan.vertices)
        mats = tuple((s, t, _zeros(dims[t - 1], dims[s - 1])) for s, t in arrows)
        return QuiverRep(self.n, dims, mats)

    def rep(self, dims) -> QuiverRep:
        """The indecomposable with the given dimension vector (a positive root)."""
        dims = tuple(dims)
        if dims in self._rep_cache:
            return self._rep_cache[dims]
        if dims not in self._root_set:
            raise DomainError(f"{dims} is not a positive root")
        chain = self._reflection_chain(dims)
        rep = self.simple(chain[-1][1], chain[-1][0])
        for arrows_t, k in reversed(chain[:-1]):
            # rep currently lives over the flipped orientation, where k is a source
            rep = self._reflect_minus(rep, k, _flip(arrows_t, k))
        if rep.dims != dims:
            raise InternalInvariantError(f"reflection build produced {rep.dims}, wanted {dims}")
        end_dim, _ = self.hom(rep, rep)
        if end_dim != 1:
            raise InternalInvariantError(f"End space of {dims} has dimension {end_dim}")
        self._rep_cache[dims] = rep
        return rep

    def _reflection_chain(self, alpha):
        """BFS over (orientation, root) states down to a simple root.

        Returns [(arrows_0, k_0), ..., (arrows_m, j)] where arrows_0 is the base
        orientation, k_t is a sink of arrows_t, and the final entry holds the
        simple root index j reached.
        """
        start = (self.arrows, alpha)
        prev: dict = {start: None}
        queue = [start]
        goal = None
        while queue:
            state = queue.pop(0)
            arrows, beta = state
            j = next((v for v in self.cartan.vertices if beta == self._unit(v)), None)
            if j is not None:
                goal = (state, j)
                break
            sinks = [v for v in self.cartan.vertices if not any(s == v for s, _ in arrows)]
            for k in sinks:
                s = 2 * beta[k - 1] - sum(beta[j2 - 1] for j2 in self.cartan.neighbors(k))
                gamma = tuple(
                    beta[v - 1] if v != k else beta[k - 1] - s for v in self.cartan.vertices
                )
                if any(x < 0 for x in gamma):
                    continue
                nxt = (_flip(arrows, k), gamma)
                if nxt not in prev:
                    prev[nxt] = (state, k)
                    queue.append(nxt)
        if goal is None:
            raise InternalInvariantError(f"no reflection chain found for {alpha}")
        state, j = goal
        steps = []
        cur = state
        while prev[cur] is not None:
            parent, k = prev[cur]
            steps.append((parent[0], k))
            cur = parent
        steps.reverse()
        steps.append((state[0], j))
        return steps

    def _unit(self, v: int) -> tuple[int, ...]:
        return tuple(1 if w == v else 0 for w in self.cartan.vertices)

    def _reflect_minus(self, rep: QuiverRep, k: int, arrows) -> QuiverRep:
        """Inverse reflection functor at a source k of rep's quiver `arrows`.

        Produces a representation of the quiver with all arrows at k reversed.
        """
        dims = rep.dims
        targets = sorted(t for s, t in arrows if s == k)
        blocks = {t: rep.matrix(k, t) for t in targets}
        total = sum(dims[t - 1] for t in targets)
        dk = dims[k - 1]
        stacked = []
        for t in targets:
            for r in range(dims[t - 1]):
                stacked.append(list(blocks[t][r]))
        # coker of psi: M_k -> direct sum of targets
        img = _column_basis(_mat(stacked) if stacked else _zeros(0, dk), total, dk)
        rank = len(img)
        new_dk = total - rank
        # complete the image to a basis of the ambient space with standard vectors
        cols: list[tuple[Fraction, ...]] = list(img)
        for e in range(total):
            if len(cols) == total:
                break
            cand = tuple(Fraction(1) if r == e else Fraction(0) for r in range(total))
            test = [[cols[c][r] for c in range(len(cols))] + [cand[r]] for r in range(total)]
            if len(_rref(test, len(cols) + 1)[1]) == len(cols) + 1:
                cols.append(cand)
        p = _mat([[cols[c][r] for c in range(total)] for r in range(total)])
        p_inv = _invert(p, total)
        proj = tuple(p_inv[rank + r] for r in range(new_dk))  # new_dk x total

        new_dims = tuple(new_dk if v == k else dims[v - 1] for v in self.cartan.vertices)
        new_arrows = tuple(sorted((t, s) if s == k else (s, t) for s, t in arrows))
        mats = []
        offset = {}
        acc = 0
        for t in targets:
            offset[t] = acc
            acc += dims[t - 1]
        for s, t in new_arrows:
            if t == k:
                dt = dims[s - 1]
                block = _mat(
                    [[proj[r][offset[s] + c] for c in range(dt)] for r in range(new_dk)]
                )
                mats.append((s, t, block))
            else:
                mats.append((s, t, rep.matrix(s, t)))
        return QuiverRep(self.n, new_dims, tuple(mats))

    # ---- socle, g-vectors -------------------------------------------------

    def socle(self, obj: CQObject) -> tuple[int, ...]:
        if obj.kind == "shift":
            return (0,) * self.n
        rep = self.rep(obj.dims)
        soc = []
        for i in self.cartan.vertices:
            di = rep.dims[i - 1]
            stacked = []
            for t in self.out[i]:
                m = rep.matrix(i, t)
                for r in range(rep.dims[t - 1]):
                    stacked.append(list(m[r]))
            rank = _rank(_mat(stacked), len(stacked), di) if stacked else 0
            soc.append(di - rank)
        return tuple(soc)

    def g_vector(self, obj: CQObject) -> tuple[int, ...]:
        if obj.kind == "shift":
            return self._unit(obj.i)
        d = obj.dims
        return tuple(
            sum(d[t - 1] for t in self.out[j]) - d[j - 1] for j in self.cartan.vertices
        )

    def extended_g(self, obj: CQObject) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.g_vector(obj), self.socle(obj)

    # ---- AR translation ----------------------------------------------------

    @functools.cached_property
    def _coxeter(self) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
        n = self.n
        e = [[0] * n for _ in range(n)]
        for i in range(n):
            e[i][i] = 1
        for s, t in self.arrows:
            e[s - 1][t - 1] -= 1
        em = _mat(e)
        einv = _invert(em, n)
        et = tuple(tuple(em[c][r] for c in range(n)) for r in range(n))
        einvt = tuple(tuple(einv[c][r] for c in range(n)) for r in range(n))
        phi = _matmul(einv, et, n, n, n)
        phi_inv = _matmul(einvt, em, n, n, n)

        def to_int(m):
            if any(x.denominator != 1 for row in m for x in row):
                raise InternalInvariantError("Coxeter matrix is not integral")
            return tuple(tuple(-int(x) for x in row) for row in m)

        return to_int(phi), to_int(phi_inv)

    def _apply(self, mat, vec) -> tuple[int, ...]:
        return tuple(sum(mat[r][c] * vec[c] for c in range(self.n)) for r in range(self.n))

    def tau_inv(self, obj: CQObject) -> CQObject:
        if obj.kind == "shift":
            return CQObject.module(self.proj_dims(obj.i))
        for j in self.cartan.vertices:
            if obj.dims == self.inj_dims(j):
                return CQObject.shifted(j)
        out = self._apply(self._coxeter[1], obj.dims)
        if out not in self._root_set:
            raise InternalInvariantError(f"tau^-1 of {obj.dims} gave non-root {out}")
        return CQObject.module(out)

    def tau(self, obj: CQObject) -> CQObject:
        if obj.kind == "shift":
            return CQObject.module(self.inj_dims(obj.i))
        for j in self.cartan.vertices:
            if obj.dims == self.proj_dims(j):
                return CQObject.shifted(j)
        out = self._apply(self._coxeter[0], obj.dims)
        if out not in self._root_set:
            raise InternalInvariantError(f"tau of {obj.dims} gave non-root {out}")
        return CQObject.module(out)

    # ---- Hom / Ext ----------------------------------------------------------

    def hom(self, x: QuiverRep, y: QuiverRep):
        """Morphism space: dimension and a basis of vertex-matrix families."""
        offs = {}
        total = 0
        for i in self.cartan.vertices:
            offs[i] = total
            total += y.dims[i - 1] * x.dims[i - 1]
        rows = []
        for s, t in self.arrows:
            xa = x.matrix(s, t)
            ya = y.matrix(s, t)
            for r in range(y.dims[t - 1]):
                for c in range(x.dims[s - 1]):
                    row = [Fraction(0)] * total
                    # (Y_a H_s)[r][c]
                    for u in range(y.dims[s - 1]):
                        row[offs[s] + u * x.dims[s - 1] + c] += ya[r][u]
                    # -(H_t X_a)[r][c]
                    for u in range(x.dims[t - 1]):
                        row[offs[t] + r * x.dims[t - 1] + u] -= xa[u][c]
                    if any(v != 0 for v in row):
                        rows.append(row)
        basis_vecs = _null_space(_mat(rows), len(rows), total)
        basis = []
        for vec in basis_vecs:
            fam = {}
            for i in self.cartan.vertices:
                di, dx = y.dims[i - 1], x.dims[i - 1]
                fam[i] = _mat(
                    [[vec[offs[i] + r * dx + c] for c in range(dx)] for r in range(di)]
                )
            basis.append(fam)
        return len(basis), basis

    def euler_form(self, dx, dy) -> int:
        val = sum(a * b for a, b in zip(dx, dy))
        for s, t in self.arrows:
            val -= dx[s - 1] * dy[t - 1]
        return val

    def ext1_mod(self, x: CQObject, y: CQObject) -> int:
        hom_dim, _ = self.hom(self.rep(x.dims), self.rep(y.dims))
        ext = hom_dim - self.euler_form(x.dims, y.dims)
        if ext < 0:
            raise InternalInvariantError("negative Ext dimension")
        return ext

    def ext1_cluster(self, x: CQObject, y: CQObject) -> int:
        if x.kind == "shift" and y.kind == "shift":
            return 0
        if x.kind == "shift":
            return y.dims[x.i - 1]
        if y.kind == "shift":
            return x.dims[y.i - 1]
        return self.ext1_mod(x, y) + self.ext1_mod(y, x)

    def exchange_pairs(self) -> tuple[tuple[CQObject, CQObject], ...]:
        objs = self.indecomposables()
        pairs = []
        for a in range(len(objs)):
            for b in range(a + 1, len(objs)):
                if self.ext1_cluster(objs[a], objs[b]) == 1:
                    pairs.append((objs[a], objs[b]))
        return tuple(pairs)

    # ---- exchange-relation ingredients --------------------------------------

    def im_h(self, l_obj: CQObject, n_obj: CQObject) -> QuiverRep:
        """Image of the (unique up to scalar) morphism tau^-1 L -> N, module case only."""
        lt = self.tau_inv(l_obj)
        if not lt.is_module or not n_obj.is_module:
            raise ShiftCaseUnsupported("tau^-1 L or N is not a module")
        rl = self.rep(lt.dims)
        rn = self.rep(n_obj.dims)
        dim, basis = self.hom(rl, rn)
        if dim == 0:
            raise ShiftCaseUnsupported("Hom(tau^-1 L, N) = 0")
        if dim > 1:
            raise ShiftCaseUnsupported("Hom(tau^-1 L, N) is not one-dimensional")
        h = basis[0]
        col_bases = {}
        dims = []
        for i in self.cartan.vertices:
            cb = _column_basis(h[i], rn.dims[i - 1], rl.dims[i - 1])
            col_bases[i] = cb
            dims.append(len(cb))
        mats = []
        for s, t in self.arrows:
            bs, bt = col_bases[s], col_bases[t]
            na = rn.matrix(s, t)
            moved = _matmul(
                na,
                _mat([[bs[c][r] for c in range(len(bs))] for r in range(rn.dims[s - 1])]),
                rn.dims[t - 1],
                rn.dims[s - 1],
                len(bs),
            )
            bmat = _mat([[bt[c][r] for c in range(len(bt))] for r in range(rn.dims[t - 1])])
            z = _solve_matrix(bmat, moved, rn.dims[t - 1], len(bt), len(bs))
            mats.append((s, t, z))
        return QuiverRep(self.n, tuple(dims), tuple(mats))

    def g_of_dims(self, d) -> tuple[int, ...]:
        return tuple(
            sum(d[t - 1] for t in self.out[j]) - d[j - 1] for j in self.cartan.vertices
        )

    def kappa(self, l_obj: CQObject, m_parts, n_obj: CQObject) -> tuple[int, ...]:
        """soc(L) + soc(N) - soc(direct sum of the middle parts)."""
        total = [a + b for a, b in zip(self.socle(l_obj), self.socle(n_obj))]
        for part in m_parts:
            for t, a in enumerate(self.socle(part)):
                total[t] -= a
        return tuple(total)

    # ---- AR quiver knitting --------------------------------------------------

    @functools.cached_property
    def _orbit_fn(self):
        memo: dict[tuple[int, int], CQObject] = {}

        def obj_at(m: int, i: int) -> CQObject:
            if (m, i) in memo:
                return memo[(m, i)]
            if m == 0:
                out = CQObject.shifted(i)
            else:
                out = self.tau_inv(obj_at(m - 1, i))
            memo[(m, i)] = out
            return out

        return obj_at

    def ar_objects(self) -> tuple[CQObject, ...]:
        """All indecomposables in knitting order (column by column from the shifts)."""
        total = len(self.roots) + self.n
        obj_at = self._orbit_fn
        seen = []
        seen_set = set()
        m = 0
        while len(seen) < total:
            for i in self.cartan.vertices:
                o = obj_at(m, i)
                if o not in seen_set:
                    seen_set.add(o)
                    seen.append(o)
            m += 1
            if m > 4 * total:
                raise InternalInvariantError("AR knitting failed to close")
        return tuple(seen)

    def ar_rows(self) -> tuple[tuple[CQObject, ...], ...]:
        """tau^-1 orbits, one per vertex, starting at the shifted projectives."""
        obj_at = self._orbit_fn
        rows = []
        for i in self.cartan.vertices:
            row = []
            m = 0
            while True:
                o = obj_at(m, i)
                if o in row:
                    break
                row.append(o)
                m += 1
            rows.append(tuple(row))
        return tuple(rows)

    def ar_arrows(self) -> tuple[tuple[CQObject, CQObject], ...]:
        total = len(self.roots) + self.n
        obj_at = self._orbit_fn
        out = []
        seen = set()
        for m in range(total + 1):
            for s, t in self.arrows:
                for pair in ((obj_at(m, t), obj_at(m, s)), (obj_at(m, s), obj_at(m + 1, t))):
                    if pair not in seen:
                        seen.add(pair)
                        out.append(pair)
        return tuple(out)

    def ar_meshes(self) -> tuple[tuple[CQObject, tuple[CQObject, ...], CQObject], ...]:
        """Meshes (tau Z, middle terms, Z) for every object Z."""
        arrows = self.ar_arrows()
        out = []
        for z in self.ar_objects():
            middles = tuple(sorted((x for x, y in arrows if y == z), key=str))
            out.append((self.tau(z), middles, z))
        return tuple(out)


def rep_json(rep: QuiverRep) -> str:
    """JSON form of a representation: dimension vector plus one matrix per arrow.

    Entries are rendered as integers when integral, else as 'p/q' strings.
    """
    import json

    def entry(x: Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    return json.dumps(
        {
            "dims": list(rep.dims),
            "matrices": [
                {"from": s, "to": t, "matrix": [[entry(x) for x in row] for row in m]}
                for s, t, m in rep.mats
            ],
        },
        indent=2,
    )


def _invert(m: Matrix, n: int) -> Matrix:
    rows = [list(m[r]) + [Fraction(1) if c == r else Fraction(0) for c in range(n)] for r in range(n)]
    rref, pivots = _rref(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise InternalInvariantError("matrix is singular")
    return _mat([row[n:] for row in rref])

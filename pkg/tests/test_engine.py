import json
import random

import pytest

from clustermod.cartan import cartan_type, linear_height
from clustermod.engine import (
    Seed,
    enumerate_exchange_graph,
    make_record,
    run_sequence,
    seed_context,
    separation,
)
from clustermod.errors import FrozenVertexError
from clustermod.quivers import IceQuiver, Vertex, build_gamma_l, build_qcheck
from clustermod.symbolic import LaurentPoly, Monomial, TropElem, fvar, xvar, ycoef

from oracles import oracle_seed_count

A2 = cartan_type("A2")
A3 = cartan_type("A3")
A4 = cartan_type("A4")

XI3 = linear_height(A3)


def poly(*terms):
    return LaurentPoly([(Monomial(m), c) for m, c in terms])


@pytest.fixture(scope="module")
def a3_seed():
    return Seed.initial(build_qcheck(A3, XI3))


@pytest.fixture(scope="module")
def a3_graph(a3_seed):
    return enumerate_exchange_graph(a3_seed)


# ---- single mutations -----------------------------------------------------------


def test_coefficient_free_a2_classic():
    q = IceQuiver.from_arrows([Vertex(1), Vertex(2)], (), [(Vertex(1), Vertex(2))])
    s = Seed.initial(q)
    s1 = s.mutate(Vertex(1))
    x1, x2 = xvar(1), xvar(2)
    assert s1.cluster[0] == poly(({x1: -1, x2: 1}, 1), ({x1: -1}, 1))  # (x2+1)/x1


def test_qcheck_mutation_at_sink(a3_seed):
    ctx = a3_seed.ctx
    assert [str(y) for y in ctx.y0] == ["f[1]^-1", "f[1] f[2]^-1", "f[2] f[3]^-1"]
    s1 = a3_seed.mutate(Vertex(3))
    k = ctx.mut_index[Vertex(3)]
    x2, x3 = xvar(2), xvar(3)
    want = poly(({x2: 1, x3: -1, fvar(3): 1}, 1), ({x3: -1, fvar(2): 1}, 1))
    assert s1.cluster[k] == want  # (f2 + f3 x2)/x3


def test_double_mutation_is_identity(a3_seed):
    for v in a3_seed.ctx.mutables:
        assert a3_seed.mutate(v).mutate(v) == a3_seed


def test_mutation_at_frozen_rejected(a3_seed):
    with pytest.raises(FrozenVertexError):
        a3_seed.mutate(Vertex(1, primed=True))


# ---- principal tracking -----------------------------------------------------------


def test_initial_records(a3_seed):
    assert a3_seed.c_matrix() == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for j in range(3):
        rec = make_record(a3_seed, j)
        assert rec.fpoly == LaurentPoly.one()
        assert rec.gvec == tuple(1 if t == j else 0 for t in range(3))


def test_gtilde_entries_from_single_mutations(a3_seed):
    s1 = a3_seed.mutate(Vertex(3))
    rec = make_record(s1, 2)
    assert rec.gvec == (0, 1, -1)
    assert rec.fpoly == poly(({}, 1), ({ycoef(3): 1}, 1))
    assert rec.gtilde == (0, 1, -1, 0, 0, 1)

    s1 = a3_seed.mutate(Vertex(1))
    rec = make_record(s1, 0)
    assert rec.gvec == (-1, 0, 0)
    assert rec.fpoly == poly(({}, 1), ({ycoef(1): 1}, 1))
    assert rec.gtilde == (-1, 0, 0, 1, 0, 0)


def test_derived_two_step_f_polynomial(a3_graph):
    # F of the variable with g = (0,-1,0): reached after two mutations
    rec = a3_graph.registry[(0, -1, 0)]
    y1, y2 = ycoef(1), ycoef(2)
    assert rec.fpoly == poly(({}, 1), ({y2: 1}, 1), ({y1: 1, y2: 1}, 1))


def test_separation_matches_direct_expansion(a3_graph):
    ctx = a3_graph.ctx
    for g, rec in a3_graph.registry.items():
        assert separation(rec, ctx) == rec.expansion


def test_separation_leading_monomial(a3_graph):
    ctx = a3_graph.ctx
    rec = a3_graph.registry[(0, 0, -1)]
    lead = Monomial({xvar(3): -1, fvar(3): 1})
    assert rec.expansion.coefficient(lead) == 1
    assert rec.gtilde == (0, 0, -1, 0, 0, 1)


def test_denominator_vectors(a3_graph):
    # classical in type A: the denominator vector is the dimension vector
    assert a3_graph.registry[(0, 0, -1)].denominator == (1, 1, 1)
    assert a3_graph.registry[(0, 1, -1)].denominator == (0, 0, 1)
    assert a3_graph.registry[(1, 0, 0)].denominator == (-1, 0, 0)


# ---- enumeration -------------------------------------------------------------------


def test_exchange_graph_counts(a3_graph):
    assert (a3_graph.seed_count, a3_graph.variable_count, len(a3_graph.edges)) == (14, 9, 21)
    assert a3_graph.exhaustive


def test_exchange_graph_counts_against_oracle():
    for ct, want in ((A2, 5), (A3, 14), (A4, 42)):
        xi = linear_height(ct)
        s0 = Seed.initial(build_qcheck(ct, xi))
        graph = enumerate_exchange_graph(s0)
        assert graph.seed_count == want
        assert oracle_seed_count(s0) == want


def test_coefficient_free_a2_enumeration():
    q = IceQuiver.from_arrows([Vertex(1), Vertex(2)], (), [(Vertex(1), Vertex(2))])
    graph = enumerate_exchange_graph(Seed.initial(q))
    assert (graph.seed_count, graph.variable_count, len(graph.edges)) == (5, 5, 5)


def test_seed_cap_flags_partial():
    s0 = Seed.initial(build_qcheck(A3, XI3))
    graph = enumerate_exchange_graph(s0, max_seeds=4)
    assert not graph.exhaustive
    assert graph.seed_count == 4


def test_enumeration_is_deterministic(a3_seed):
    g1 = enumerate_exchange_graph(a3_seed)
    g2 = enumerate_exchange_graph(Seed.initial(build_qcheck(A3, XI3)))
    assert list(g1.registry) == list(g2.registry)
    assert [
        (e.vertex, e.old_g, e.new_g) for e in g1.edges
    ] == [(e.vertex, e.old_g, e.new_g) for e in g2.edges]
    assert g1.report_json() == g2.report_json()


def test_sign_coherence_everywhere(a3_graph):
    for seed in a3_graph.seeds.values():
        for k in range(3):
            col = seed.pcoeffs[k].exps
            assert all(e >= 0 for e in col) or all(e <= 0 for e in col)


def test_laurent_positivity_everywhere(a3_graph):
    for rec in a3_graph.registry.values():
        assert all(c > 0 for _, c in rec.expansion.terms())
        assert rec.fpoly.constant_term() == 1


# ---- exchange relations --------------------------------------------------------------


def test_initial_edge_coefficient_split(a3_seed):
    ctx = a3_seed.ctx
    one = TropElem.one(ctx.gens)
    for v in ctx.mutables:
        k = ctx.mut_index[v]
        _, edge = a3_seed.mutate_with_edge(v)
        yk = ctx.y0[k]
        assert edge.term1.fexp == (yk * (yk + one).inverse()).exps
        assert edge.term2.fexp == (yk + one).inverse().exps


def test_edge_product_identity(a3_graph):
    ctx = a3_graph.ctx
    for edge in a3_graph.edges:
        lhs = a3_graph.registry[edge.old_g].expansion * a3_graph.registry[edge.new_g].expansion
        rhs = LaurentPoly.zero()
        for term in (edge.term1, edge.term2):
            part = LaurentPoly.from_monomial(TropElem(ctx.gens, term.fexp).as_monomial())
            for fg, mult in term.factors:
                part = part * a3_graph.registry[fg].expansion ** mult
            rhs = rhs + part
        assert lhs == rhs


# ---- grid-quiver seeds ----------------------------------------------------------------


def test_gamma_seed_coefficients_match_structure():
    grid = build_gamma_l(A3, XI3, 2)
    ctx = seed_context(grid)
    by_label = {str(v): y for v, y in zip(ctx.mutables, ctx.y0)}
    # top rows have trivial coefficients, the row above the frozen one reads it off
    assert by_label["(1,0)"].is_one and by_label["(2,-1)"].is_one and by_label["(3,-2)"].is_one
    assert str(by_label["(1,-2)"]) == "z[1,-4]^-1"
    assert str(by_label["(2,-3)"]) == "z[1,-4] z[2,-5]^-1"
    assert str(by_label["(3,-4)"]) == "z[2,-5] z[3,-6]^-1"


def test_run_sequence_and_involution_walk():
    rng = random.Random(123)
    seed = Seed.initial(build_gamma_l(A3, XI3, 2))
    for _ in range(30):
        v = seed.ctx.mutables[rng.randrange(len(seed.ctx.mutables))]
        nxt = seed.mutate(v)
        assert nxt.mutate(v) == seed
        seed = nxt
    back, edges = run_sequence(seed, [])
    assert back == seed and edges == []


def test_separation_on_grid_seed_after_sequence():
    from clustermod.verify import s_l_sequence

    seed = Seed.initial(build_gamma_l(A3, XI3, 2))
    ctx = seed.ctx
    final, _ = run_sequence(seed, s_l_sequence(A3, XI3, 2))
    for j in range(len(ctx.mutables)):
        rec = make_record(final, j)
        assert separation(rec, ctx) == rec.expansion


def test_seed_json_smoke(a3_seed):
    from clustermod.engine import seed_json

    data = json.loads(seed_json(a3_seed))
    assert data["cluster"] == ["x[1]", "x[2]", "x[3]"]
    assert data["coefficients"] == ["f[1]^-1", "f[1] f[2]^-1", "f[2] f[3]^-1"]

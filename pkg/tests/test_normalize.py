import json
import random

import pytest

from lagrel import diagram as dg
from lagrel import normalize as nz
from lagrel.axioms import equations
from lagrel.errors import FieldMismatch, NotAPForm, NotConnected, NotInternal, TypeMismatch, ZeroEdge, ZeroSymplecticPhase
from lagrel.fields import Q, prime_field
from lagrel.normalize import GVertex, GraphLikeState

from randdiag import random_diagram
from rewrites import rewrite
from test_acceptance import lc_instance, pivot_instance, random_graph_like

F2, F3, F5 = prime_field(2), prime_field(3), prime_field(5)


def I(D):
    return dg.interpret(D)


def gls(f, verts, edges):
    """Graph-like state from ``[(a, b, output)]`` and ``{(i, j): w}``."""
    n = len(verts)
    adj = [[f.zero] * n for _ in range(n)]
    for (i, j), w in edges.items():
        adj[i][j] = adj[j][i] = f(w)
    outs = sum(1 for v in verts if v[2] is not None)
    return GraphLikeState(f, outs, [GVertex(f(a), f(b), o) for a, b, o in verts], adj)


# -- bending ------------------------------------------------------------------


def test_bend_round_trip():
    rng = random.Random(0)
    for _ in range(30):
        D = random_diagram(rng, F5, rng.randint(0, 2), rng.randint(0, 2), size=4)
        R = I(D)
        assert nz.unbend(nz.bend(R), D.n_in) == R
        assert nz.bend(R).dom == 0


# -- graph-like form ----------------------------------------------------------


def test_to_graph_like_preserves_semantics():
    rng = random.Random(1)
    for f in (F3, F5, Q):
        for _ in range(40):
            D = random_diagram(rng, f, rng.randint(0, 2), rng.randint(0, 2), size=rng.randint(1, 6))
            G, split = nz.to_graph_like(D)
            assert split == D.type
            assert G.relation() == nz.bend(I(D))
            assert I(G.to_diagram()) == nz.bend(I(D))
            assert all(v.kind == "grey" for v in G.to_diagram().vertices.values())


def _shape(G):
    """Relabel-invariant description: boundary vertices by port, internal vertices in order."""
    order = [G.boundary_vertex(k) for k in range(G.n_outputs)] + G.internal
    verts = [(G.vertices[i].a, G.vertices[i].b, G.vertices[i].output) for i in order]
    adj = [[G.adjacency[i][j] for j in order] for i in order]
    return verts, adj


def test_graph_like_input_is_unchanged():
    rng = random.Random(2)
    for _ in range(30):
        G = random_graph_like(rng, F5, rng.randint(1, 3), rng.randint(0, 2))
        H, _ = nz.to_graph_like(G.to_diagram())
        assert _shape(H) == _shape(G)


def test_white_state_becomes_grey():
    D = dg.white(F5, 2, 3, 0, 1)
    G, _ = nz.to_graph_like(D)
    assert G.relation() == I(D)
    assert I(G.to_diagram()) == I(D)


def test_three_boundary_one_internal_example():
    G = gls(Q, [(0, 1, 0), (1, 0, 1), (0, 2, 2), (3, 0, None)], {(0, 1): 1, (1, 2): 2, (0, 3): 1, (1, 3): -1, (2, 3): 5})
    H, split = nz.to_graph_like(G.to_diagram())
    assert split == (0, 3)
    assert len(H.internal) == 1 and H.n_outputs == 3
    assert _shape(H) == _shape(G)


# -- local complementation ------------------------------------------------------


def test_lc_isolated_vertex():
    G = gls(Q, [(1, 2, 0), (3, 5, None)], {})
    H = nz.local_complement(G, 1)
    assert H.vertices == (G.vertices[0],) and H.relation() == G.relation()


def test_lc_f3_star():
    # internal (0, 1) joined with weight 1 to two boundary (0, 0) vertices
    G = gls(F3, [(0, 0, 0), (0, 0, 1), (0, 1, None)], {(0, 2): 1, (1, 2): 1})
    H = nz.local_complement(G, 2)
    assert [(v.a, v.b) for v in H.vertices] == [(F3(0), F3(2)), (F3(0), F3(2))]
    # with this sign convention the new mutual edge has weight 1, which is what the semantics demands
    assert H.adjacency[0][1] == F3(1)
    assert H.relation() == G.relation()
    wrong = gls(F3, [(0, 2, 0), (0, 2, 1)], {(0, 1): 2})
    assert wrong.relation() != G.relation()


def test_lc_random_f5():
    rng = random.Random(3)
    for _ in range(50):
        G, v = lc_instance(rng, F5)
        assert len(G.neighbours(v)) <= 4
        H = nz.local_complement(G, v)
        assert H.relation() == G.relation()


def test_lc_errors():
    G = gls(Q, [(0, 0, 0), (0, 0, None)], {(0, 1): 1})
    with pytest.raises(NotInternal):
        nz.local_complement(G, 0)
    with pytest.raises(ZeroSymplecticPhase):
        nz.local_complement(G, 1)


# -- pivot ----------------------------------------------------------------------


def test_pivot_isolated_pair():
    G = gls(Q, [(1, 1, 0), (2, 0, None), (3, 0, None)], {(1, 2): 4})
    H = nz.pivot(G, 1, 2)
    # the pair relates only to itself: removing it keeps the rest and the semantics
    assert H.vertices == (G.vertices[0],)
    assert H.relation() == G.relation()


def test_pivot_common_neighbour_f3():
    G = gls(F3, [(1, 2, 0), (0, 1, 1), (2, 0, None), (1, 0, None)], {(0, 2): 1, (0, 3): 2, (1, 3): 1, (2, 3): 1})
    H = nz.pivot(G, 2, 3)
    assert H.relation() == G.relation()
    assert I(H.to_diagram()) == I(G.to_diagram())


def test_pivot_characteristic_two():
    rng = random.Random(4)
    for _ in range(50):
        G, u, v = pivot_instance(rng, F2)
        H = nz.pivot(G, u, v)
        assert H.relation() == G.relation()
        # 2 = 0 here, so symplectic phases of the survivors never change
        rest = [i for i in range(len(G.vertices)) if i not in (u, v)]
        assert [H.vertices[k].b for k in range(len(rest))] == [G.vertices[i].b for i in rest]


def test_pivot_errors():
    G = gls(Q, [(0, 0, 0), (0, 0, None), (0, 0, None), (0, 1, None)], {(1, 2): 1, (1, 3): 1})
    with pytest.raises(NotInternal):
        nz.pivot(G, 0, 1)
    with pytest.raises(NotConnected):
        nz.pivot(G, 1, 1)
    with pytest.raises(ZeroEdge):
        nz.pivot(G, 2, 3)
    with pytest.raises(ZeroSymplecticPhase):
        nz.pivot(G, 1, 3)


def test_eliminate_agrees_with_lc_and_pivot():
    rng = random.Random(5)
    for f in (F3, F5, Q):
        for _ in range(30):
            G, v = lc_instance(rng, f)
            assert nz.eliminate(G, [v]) == nz.local_complement(G, v)
            G, u, w = pivot_instance(rng, f)
            assert nz.eliminate(G, [u, w]) == nz.pivot(G, u, w)


# -- AP-form and reduced AP-form ------------------------------------------------


def test_ap_form_examples():
    G = nz.graph_like_from_matrix(F5, [[1, 2], [2, 0]])
    assert nz.to_ap_form(G) == G
    star = gls(F3, [(0, 0, 0), (0, 0, 1), (0, 1, None)], {(0, 2): 1, (1, 2): 1})
    H = nz.to_ap_form(star)
    assert H.internal == [] and nz.is_ap_form(H) and H.relation() == star.relation()


def test_ap_form_random_f5():
    rng = random.Random(6)
    for _ in range(40):
        G = random_graph_like(rng, F5, 3, 3)
        H = nz.to_ap_form(G)
        assert nz.is_ap_form(H)
        assert H.relation() == G.relation()


def test_reduced_ap_of_graph_state():
    S = [[1, 2, 0], [2, 3, 4], [0, 4, 0]]
    s = [1, 0, 3]
    form = nz.to_reduced_ap(nz.graph_like_from_matrix(F5, S, s))
    assert form.m == 0 and form.sigma == (0, 1, 2) and form.F == () and form.x == ()
    assert [[int(v) for v in r] for r in form.S] == S
    assert [int(v) for v in form.s] == s


def test_reduced_ap_empty():
    G = gls(Q, [(0, 0, 0), (1, 0, None)], {})
    form = nz.to_reduced_ap(G)
    assert form.empty and isinstance(form, nz.EmptyForm)
    assert form.relation().empty and I(form.to_diagram()).empty
    with pytest.raises(NotAPForm):
        nz.to_reduced_ap(gls(Q, [(0, 0, 0), (1, 1, None)], {(0, 1): 1}))


def _check_reduced_bullets(form):
    P, N = form.sigma[: form.m], form.sigma[form.m :]
    assert list(P) == sorted(P) and list(N) == sorted(N)
    assert sorted(form.sigma) == list(range(len(form.sigma)))
    for i, p in enumerate(P):
        # E = [1 | F] sigma is in RREF: nothing left of each pivot
        for j, q in enumerate(N):
            if q < p:
                assert not form.F[i][j]
    k = len(N)
    assert all(form.S[i][j] == form.S[j][i] for i in range(k) for j in range(k))


def test_reduced_ap_random_f3():
    rng = random.Random(7)
    seen_m = set()
    for _ in range(60):
        G = nz.to_ap_form(random_graph_like(rng, F3, rng.randint(1, 4), rng.randint(0, 3)))
        form = nz.to_reduced_ap(G)
        if form.empty:
            assert G.relation().empty
            continue
        seen_m.add(form.m)
        _check_reduced_bullets(form)
        assert form.state() == G.relation()
        assert I(form.to_diagram()) == G.relation()
    assert len(seen_m) > 1


# -- normal forms -----------------------------------------------------------------


def test_normal_form_distinguishes_grey_and_white_states():
    a = nz.normal_form(dg.grey(Q, 0, 0, 0, 1))
    b = nz.normal_form(dg.white(Q, 0, 0, 0, 1))
    assert a.dumps() != b.dumps()


def test_axiom_sides_share_normal_forms():
    rng = random.Random(8)
    for f in (F3, F5, Q):
        for eq in equations("affine") + equations("lemma"):
            for _ in range(3):
                lhs, rhs = eq.instance(f, rng)
                assert nz.normal_form(lhs).dumps() == nz.normal_form(rhs).dumps(), eq.name


def test_normal_form_under_rewrites_f5():
    rng = random.Random(9)
    for _ in range(40):
        D = random_diagram(rng, F5, rng.randint(0, 2), rng.randint(0, 2), size=5)
        assert nz.normal_form(rewrite(D, rng)).dumps() == nz.normal_form(D).dumps()


def test_normal_form_matches_direct_canonical_form():
    rng = random.Random(10)
    for f in (F2, F3, Q):
        for _ in range(40):
            D = random_diagram(rng, f, rng.randint(0, 2), rng.randint(0, 2), size=rng.randint(1, 6))
            nf = nz.normal_form(D)
            assert nz.canonical_form(I(D), D.n_in) == nf
            assert nf.relation() == I(D)
            assert nz.normal_form(nf.to_diagram()) == nf


def test_normal_form_json():
    nf = nz.normal_form(dg.compose(dg.grey(F3, 1, 2), dg.grey(F3, 2, 2)))
    d = json.loads(nf.dumps())
    assert set(d) == {"type", "sigma", "F", "x", "S", "s"}
    assert nz.normal_form(dg.grey(Q, 1, 0, 0, 0)).to_json() == {"empty": True, "type": [0, 0]}


# -- decide_equal ---------------------------------------------------------------


def test_decide_equal_lemmas():
    rng = random.Random(11)
    for eq in equations("lemma"):
        lhs, rhs = eq.instance(F5, rng)
        assert nz.decide_equal(lhs, rhs), eq.name


def test_decide_equal_dagger_witness():
    D = dg.compose(dg.grey(F5, 1, 2), dg.box(F5, 3))
    assert not nz.decide_equal(D, dg.dagger(D))
    assert I(D) != I(dg.dagger(D))


def test_discarding_isometries():
    rng = random.Random(12)
    d = dg.discard(F5)
    for _ in range(10):
        a, b = F5.random(rng), F5.random(rng)
        c = F5.random(rng, nonzero=True)
        for U in (dg.box(F5, c), dg.grey(F5, a, b), dg.white(F5, a, b)):
            assert nz.decide_equal(dg.compose(U, d), d)
    copy = dg.grey(F5, 0, 0, 1, 2)
    assert nz.decide_equal(dg.compose(copy, dg.tensor(d, d)), d)
    # a discarded state leaves the unit scalar
    assert nz.decide_equal(dg.compose(dg.grey(F5, 0, 0, 0, 1), d), dg.empty_diagram(F5))


def test_decide_equal_checks():
    with pytest.raises(FieldMismatch):
        nz.decide_equal(dg.identity(Q, 1), dg.identity(F3, 1))
    with pytest.raises(TypeMismatch):
        nz.decide_equal(dg.identity(Q, 1), dg.identity(Q, 2))

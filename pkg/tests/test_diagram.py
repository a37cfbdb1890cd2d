import json
import random

import pytest

from lagrel import diagram as dg
from lagrel import symplectic as sy
from lagrel.affrel import AffineRelation
from lagrel.diagram import Diagram, Scalar
from lagrel.errors import ContainsDiscard, FieldMismatch, InvalidArity, ParseError, TypeMismatch
from lagrel.fields import QS, Q, prime_field

from randdiag import random_diagram

F3, F5 = prime_field(3), prime_field(5)


def I(D):
    return dg.interpret(D)


def test_generators():
    assert I(dg.make_generator(Q, "grey", (0, 0), 1, 1)) == AffineRelation.identity(Q, 2)
    assert I(dg.make_generator(Q, "box", (1,))) == sy.symplectic_graph(
        __import__("lagrel.exactlin", fromlist=["Matrix"]).Matrix(Q, [[0, -1], [1, 0]])
    )
    d = dg.make_generator(Q, "discard", (), 1, 0)
    assert len(d.vertices) == 1 and d.has_discard
    with pytest.raises(InvalidArity):
        dg.make_generator(Q, "box", (1,), 1, 2)
    with pytest.raises(InvalidArity):
        dg.make_generator(Q, "bogus")


def test_interpret_examples():
    # the phase-free grey state is the line z = 0
    assert I(dg.grey(Q, 0, 0, 0, 1)) == AffineRelation(Q, 0, 2, [[1, 0]], [0])
    box = I(dg.box(F5, 1))
    assert set(box.points()) == {(z, x, -x, z) for z in F5.elements() for x in F5.elements()}
    assert I(dg.grey(Q, 1, 0, 0, 0)).empty


def test_grey_and_white_equations_over_f3():
    # check every point of a 1 -> 2 spider against the defining equations
    for a in range(3):
        for b in range(3):
            a_, b_ = F3(a), F3(b)
            G = I(dg.grey(F3, a_, b_, 1, 2))
            W = I(dg.white(F3, a_, b_, 1, 2))
            for p in __import__("itertools").product(list(F3.elements()), repeat=6):
                z0, x0, z1, x1, z2, x2 = p
                g = x0 == x1 == x2 and z0 - z1 - z2 + b_ * x0 == a_
                w = z1 == -z0 and z2 == -z0 and x0 + x1 + x2 - b_ * z0 == a_
                assert G.contains(p) == g
                assert W.contains(p) == w


def test_scalar_values():
    assert dg.scalar_value(dg.empty_diagram(Q)) is Scalar.UNIT
    assert dg.scalar_value(dg.grey(Q, 1, 0, 0, 0)) is Scalar.EMPTY
    assert dg.scalar_value(dg.compose(dg.cup(Q), dg.cap(Q))) is Scalar.UNIT
    with pytest.raises(TypeMismatch):
        dg.scalar_value(dg.identity(Q, 1))


def test_compose_identity_and_fusion():
    rng = random.Random(0)
    for _ in range(20):
        D = random_diagram(rng, F5, 1, 2, size=4)
        assert I(dg.compose(dg.identity(F5, 1), D)) == I(D)
        assert I(dg.compose(D, dg.identity(F5, 2))) == I(D)
        a, b, c, d = (F5.random(rng) for _ in range(4))
        assert I(dg.compose(dg.grey(F5, a, b), dg.grey(F5, c, d))) == I(dg.grey(F5, a + c, b + d))


def test_box_products_are_antipodes_f5():
    antipode = I(dg.white(F5, 0, 0))
    for c in range(1, 5):
        assert I(dg.compose(dg.box(F5, c), dg.box(F5, c))) == antipode


def test_compose_boxed_edges_stays_valid():
    D = dg.compose(dg.box(Q, 2), dg.box(Q, 3))
    assert len(D.vertices) == 1
    assert I(D) == I(dg.compose(dg.compose(dg.box(Q, 2), dg.grey(Q, 0, 0)), dg.box(Q, 3)))


def test_compose_type_and_field_checks():
    with pytest.raises(TypeMismatch):
        dg.compose(dg.identity(Q, 1), dg.identity(Q, 2))
    with pytest.raises(FieldMismatch):
        dg.compose(dg.identity(Q, 1), dg.identity(F3, 1))


def test_tensor():
    rng = random.Random(1)
    from lagrel import affrel

    for _ in range(20):
        A = random_diagram(rng, F3, 1, 1, size=3)
        B = random_diagram(rng, F3, 1, 0, size=3)
        assert I(dg.tensor(A, B)) == affrel.tensor(I(A), I(B))
        assert I(dg.tensor_all(F3)) == AffineRelation.identity(F3, 0)


def test_dagger():
    rng = random.Random(2)
    for _ in range(40):
        D = random_diagram(rng, F3, rng.randint(0, 2), rng.randint(0, 2), size=5)
        Dd = dg.dagger(D)
        assert dg.dagger(Dd) == D
        assert I(Dd) == sy.dagger(I(D))
    assert dg.dagger(dg.box(Q, 3)) == dg.box(Q, -3)
    with pytest.raises(ContainsDiscard):
        dg.dagger(dg.discard(Q))


def test_dagger_distinguishes_non_self_adjoint():
    D = dg.grey(Q, 1, 2)
    assert I(D) != I(dg.dagger(D))


def test_permutation_and_on_wires():
    f = Q
    P = dg.permutation(f, [2, 0, 1])
    R = I(P)
    u = [Q(i) for i in range(6)]
    # wire k goes to output perm[k]
    v = [None] * 6
    for k, p in enumerate([2, 0, 1]):
        v[2 * p], v[2 * p + 1] = u[2 * k], u[2 * k + 1]
    assert R.contains(u + v)
    B = dg.on_wires(dg.box(f, 1), [1], 2)
    assert I(B) == I(dg.tensor(dg.identity(f, 1), dg.box(f, 1)))
    with pytest.raises(InvalidArity):
        dg.permutation(f, [0, 0])


def test_json_round_trip():
    rng = random.Random(3)
    for f in (Q, F3, QS):
        for _ in range(10):
            D = random_diagram(rng, f, rng.randint(0, 2), rng.randint(0, 2), size=5, allow_discard=True)
            text = D.dumps()
            E = Diagram.loads(text)
            assert E == D and E.dumps() == text
            assert I(E) == I(D)


def test_json_errors():
    with pytest.raises(ParseError):
        Diagram.loads("{not json")
    with pytest.raises(ParseError):
        Diagram.loads(json.dumps({"field": "Q", "vertices": []}))
    good = dg.grey(Q, 1, 2).to_json()
    bad = dict(good, field="F_p:3")
    bad["vertices"] = [dict(good["vertices"][0], phase=["1/2", "0"])]
    with pytest.raises(ParseError):
        Diagram.from_json(bad)
    bad = dict(good, inputs=[1])
    with pytest.raises(ParseError):
        Diagram.from_json(bad)


def test_validation():
    from lagrel.diagram import Edge, End, Vertex

    with pytest.raises(InvalidArity):
        Diagram(Q, {}, [Edge(End.input(0), End.output(0))], 2, 1)
    with pytest.raises(FieldMismatch):
        Diagram(Q, {0: Vertex("grey", (F3(1), F3(0)))}, [], 0, 0)
    with pytest.raises(InvalidArity):
        Diagram(Q, {0: Vertex("discard")}, [], 0, 0)

import itertools
import random

import pytest

from lagrel import affrel
from lagrel.affrel import AffineRelation
from lagrel.errors import DimensionMismatch, DivisionByZero
from lagrel.exactlin import Matrix, inverse, is_injective, is_surjective, kernel, rank, rref, solve
from lagrel.fields import Q, prime_field

F3, F5 = prime_field(3), prime_field(5)


def rand_matrix(rng, f, r, c):
    return Matrix(f, [[f.random(rng) for _ in range(c)] for _ in range(r)], cols=c)


def is_rref(M, pivots):
    """Independent shape check: leading ones, clean pivot columns, zero rows last."""
    f = M.field
    last = -1
    for i in range(M.rows):
        row = M.row(i)
        lead = next((j for j, v in enumerate(row) if v), None)
        if lead is None:
            if any(any(M.row(k)) for k in range(i, M.rows)):
                return False
            break
        if lead <= last or row[lead] != f.one:
            return False
        if any(M[k, lead] for k in range(M.rows) if k != i):
            return False
        if pivots[i] != lead:
            return False
        last = lead
    return len(pivots) == sum(1 for i in range(M.rows) if any(M.row(i)))


def test_rref_identity_and_zero():
    res = rref(Matrix.identity(Q, 3))
    assert res.rref == Matrix.identity(Q, 3) and res.pivots == (0, 1, 2) and res.transform == Matrix.identity(Q, 3)
    Z = Matrix.zeros(Q, 2, 3)
    res = rref(Z)
    assert res.rref == Z and res.pivots == () and res.transform == Matrix.identity(Q, 2)


@pytest.mark.parametrize("f", [F3, F5, Q])
def test_rref_random(f):
    rng = random.Random(2)
    for _ in range(40):
        A = rand_matrix(rng, f, rng.randint(1, 4), rng.randint(1, 5))
        res = rref(A)
        assert res.transform @ A == res.rref
        assert is_rref(res.rref, res.pivots)
        assert rank(res.transform) == A.rows
        assert rref(res.rref).rref == res.rref


def test_rank_of_transpose():
    rng = random.Random(3)
    for _ in range(50):
        A = rand_matrix(rng, F3, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(A) == rank(A.transpose())


def test_kernel_examples():
    assert kernel(Matrix.identity(Q, 3)) == []
    (v,) = kernel(Matrix(Q, [[1, 1]]))
    assert v == (Q(-1), Q(1))


def test_kernel_random_f3_by_enumeration():
    rng = random.Random(4)
    for _ in range(40):
        r, c = rng.randint(1, 3), rng.randint(1, 4)
        A = rand_matrix(rng, F3, r, c)
        ker = kernel(A)
        assert len(ker) == c - rank(A)
        for v in ker:
            assert not any(A.apply(v))
        # the span of the basis is exactly the set of solutions of A v = 0
        null = {p for p in itertools.product(list(F3.elements()), repeat=c) if not any(A.apply(p))}
        span = set()
        for coeffs in itertools.product(list(F3.elements()), repeat=len(ker)):
            span.add(tuple(sum((k * v[i] for k, v in zip(coeffs, ker)), F3.zero) for i in range(c)))
        assert span == null


def test_solve_examples():
    b = [Q(3), Q(-1)]
    sol = solve(Matrix.identity(Q, 2), b)
    assert sol.particular == tuple(b) and sol.kernel_basis == ()
    assert not solve(Matrix(Q, [[1], [1]]), [1, 2])


def test_solve_random_f5_by_substitution():
    rng = random.Random(5)
    for _ in range(40):
        A = rand_matrix(rng, F5, rng.randint(1, 4), rng.randint(1, 4))
        x = [F5.random(rng) for _ in range(A.cols)]
        b = A.apply(x)
        sol = solve(A, b)
        assert A.apply(sol.particular) == b
        for v in sol.kernel_basis:
            assert not any(A.apply(v))
        assert len(sol.kernel_basis) == A.cols - rank(A)


def test_solve_checks_shape():
    with pytest.raises(DimensionMismatch):
        solve(Matrix.identity(Q, 2), [1])


def test_injective_surjective_examples():
    I = Matrix.identity(Q, 2)
    assert is_injective(I) and is_surjective(I)
    A = Matrix(Q, [[1, 0]])
    assert is_surjective(A) and not is_injective(A)


def test_tall_full_rank_is_injective():
    rng = random.Random(6)
    seen = 0
    while seen < 20:
        A = rand_matrix(rng, F3, 4, 2)
        if rank(A) < 2:
            continue
        seen += 1
        assert is_injective(A) and kernel(A) == []


def test_inverse():
    rng = random.Random(7)
    for _ in range(30):
        A = rand_matrix(rng, F5, 3, 3)
        if rank(A) < 3:
            with pytest.raises(DivisionByZero):
                inverse(A)
        else:
            assert inverse(A) @ A == Matrix.identity(F5, 3)


def _graph(A):
    """Relation of the linear map ``A`` from its column space to its row space."""
    return AffineRelation.graph(A)


def test_relational_characterisations_over_f3():
    # injective  <=>  A followed by its converse is the identity
    #            <=>  only zero is sent to zero
    # surjective <=>  the converse followed by A is the identity
    #            <=>  the image is the whole codomain
    rng = random.Random(8)
    for _ in range(60):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        A = rand_matrix(rng, F3, r, c)
        G = _graph(A)
        Gt = affrel.converse(G)
        zero_in = AffineRelation.from_points(F3, c, 0, [(F3.zero,) * c])
        zero_out = AffineRelation.from_points(F3, r, 0, [(F3.zero,) * r])
        inj = [
            affrel.compose(G, Gt) == AffineRelation.identity(F3, c),
            affrel.compose(G, zero_out) == zero_in,
        ]
        sur = [
            affrel.compose(Gt, G) == AffineRelation.identity(F3, r),
            affrel.image(G) == AffineRelation.full(F3, 0, r),
        ]
        assert inj == [is_injective(A)] * 2
        assert sur == [is_surjective(A)] * 2

"""Symplectic structure on affine relations between wires.

A wire carries a pair ``(z, x)``; wire ``i`` of a relation side occupies
coordinates ``2i`` (the Z-grading) and ``2i + 1`` (the X-grading).  A relation
``m -> n`` between wires is an :class:`~lagrel.affrel.AffineRelation` with
``2m`` domain and ``2n`` codomain coordinates, and it is judged against the
twisted form ``omega_m(dom) - omega_n(cod)``.

The dagger is the relational converse.  Under it every graph of a symplectic
map is unitary, the box labelled ``c`` is sent to the box labelled ``-c``, and
the compact structure below is self-dual (``cup^dagger == cap``).
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from . import affrel
from .affrel import AffineRelation
from .errors import DimensionMismatch, TypeMismatch
from .exactlin import Matrix, kernel, rank
from .fields import Field

__all__ = [
    "Kind",
    "omega",
    "twisted_omega",
    "omega_matrix",
    "symplectic_complement",
    "classify",
    "is_lagrangian",
    "is_coisotropic",
    "dagger",
    "is_isometry",
    "coiso_equal",
    "wires",
    "identity",
    "swap",
    "cup",
    "cap",
    "symplectic_graph",
]


class Kind(str, Enum):
    EMPTY = "Empty"
    ISOTROPIC = "Isotropic"
    COISOTROPIC = "Coisotropic"
    LAGRANGIAN = "Lagrangian"
    NONE = "None"


def omega(u: Sequence, v: Sequence):
    """``sum_i z_i x'_i - x_i z'_i`` over the wires of two vectors."""
    if len(u) != len(v) or len(u) % 2:
        raise DimensionMismatch("omega needs two vectors of the same even length")
    acc = 0
    for i in range(0, len(u), 2):
        acc = acc + u[i] * v[i + 1] - u[i + 1] * v[i]
    return acc


def twisted_omega(m: int, n: int, u: Sequence, v: Sequence):
    """``omega_m`` on the first ``2m`` coordinates minus ``omega_n`` on the rest."""
    if len(u) != 2 * (m + n) or len(v) != 2 * (m + n):
        raise DimensionMismatch(f"twisted form on {m}->{n} wires needs length {2 * (m + n)}")
    k = 2 * m
    return omega(u[:k], v[:k]) - omega(u[k:], v[k:])


def omega_matrix(field: Field, n: int) -> Matrix:
    """Gram matrix of ``omega_n`` in the interleaved basis."""
    z, o = field.zero, field.one
    rows = [[z] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[2 * i][2 * i + 1] = o
        rows[2 * i + 1][2 * i] = -o
    return Matrix(field, rows, cols=2 * n)


def _form_rows(field: Field, m: int, n: int, basis: Sequence[Sequence]):
    """Row ``c_s`` per basis vector ``s`` with ``c_s . w == twisted_omega(w, s)``."""
    out = []
    for s in basis:
        c = [field.zero] * (2 * (m + n))
        for w in range(m + n):
            sign = 1 if w < m else -1
            c[2 * w] = sign * s[2 * w + 1]
            c[2 * w + 1] = -sign * s[2 * w]
        out.append([field(v) for v in c])
    return out


def symplectic_complement(field: Field, m: int, n: int, basis: Sequence[Sequence]) -> list[tuple]:
    """Basis of ``{w : twisted_omega(w, s) = 0 for all s in basis}``."""
    dim = 2 * (m + n)
    for s in basis:
        if len(s) != dim:
            raise DimensionMismatch(f"basis vectors must have length {dim}")
    rows = _form_rows(field, m, n, basis)
    if not rows:
        return [tuple(field.one if i == j else field.zero for j in range(dim)) for i in range(dim)]
    return kernel(Matrix(field, rows, cols=dim))


def wires(R: AffineRelation) -> tuple[int, int]:
    if R.dom % 2 or R.cod % 2:
        raise DimensionMismatch("relation does not have an even number of coordinates per side")
    return R.dom // 2, R.cod // 2


def classify(R: AffineRelation) -> Kind:
    """Empty, Lagrangian, Isotropic, Coisotropic or None (for the linear part)."""
    m, n = wires(R)
    if R.empty:
        return Kind.EMPTY
    f = R.field
    basis = list(R.span().basis)
    iso = all(
        not twisted_omega(m, n, a, b) for i, a in enumerate(basis) for b in basis[i + 1:]
    )
    comp = symplectic_complement(f, m, n, basis)
    dim = 2 * (m + n)
    r = len(basis)
    coiso = not comp or rank(Matrix(f, basis + comp, cols=dim)) == r
    if iso and coiso:
        return Kind.LAGRANGIAN
    if iso:
        return Kind.ISOTROPIC
    if coiso:
        return Kind.COISOTROPIC
    return Kind.NONE


def is_lagrangian(R: AffineRelation) -> bool:
    """Lagrangian, counting the empty relation as Lagrangian."""
    return classify(R) in (Kind.LAGRANGIAN, Kind.EMPTY)


def is_coisotropic(R: AffineRelation) -> bool:
    """Coisotropic (Lagrangian included), counting the empty relation."""
    return classify(R) in (Kind.COISOTROPIC, Kind.LAGRANGIAN, Kind.EMPTY)


def dagger(R: AffineRelation) -> AffineRelation:
    wires(R)
    return affrel.converse(R)


def is_isometry(R: AffineRelation) -> bool:
    """``R`` followed by its dagger is the identity on the domain."""
    m, _ = wires(R)
    return affrel.compose(R, dagger(R)) == AffineRelation.identity(R.field, 2 * m)


def coiso_equal(L: AffineRelation, K: AffineRelation) -> bool:
    """Compare ``L L^dagger`` with ``K K^dagger``.

    In diagram order ``L L^dagger`` is the dagger first, then ``L``: a relation
    ``n -> n`` on the shared codomain.  For isometries this holds exactly when
    the images agree.
    """
    if L.field != K.field:
        raise TypeMismatch("relations live over different fields")
    if L.cod != K.cod:
        raise TypeMismatch("relations must share a codomain")
    return affrel.compose(dagger(L), L) == affrel.compose(dagger(K), K)


# ---------------------------------------------------------------------------
# Structural relations
# ---------------------------------------------------------------------------


def identity(field: Field, n: int) -> AffineRelation:
    return AffineRelation.identity(field, 2 * n)


def cup(field: Field) -> AffineRelation:
    """``{(z, x, -z, x)} : 0 -> 2``, the two-legged phase-free grey spider."""
    o, z = field.one, field.zero
    return AffineRelation(field, 0, 4, [[o, z, o, z], [z, o, z, -o]], [z, z])


def cap(field: Field) -> AffineRelation:
    return dagger(cup(field))


def swap(field: Field) -> AffineRelation:
    return affrel.project(AffineRelation.identity(field, 4), [0, 1, 2, 3, 6, 7, 4, 5], dom=4)


def symplectic_graph(M: Matrix, shift: Sequence | None = None) -> AffineRelation:
    """Graph of the affine map ``v -> M v + shift`` on interleaved coordinates."""
    if M.rows % 2 or M.cols % 2:
        raise DimensionMismatch("symplectic maps act on an even number of coordinates")
    return AffineRelation.graph(M, shift)

"""Affine relations over a field: the semantic target of every diagram.

An :class:`AffineRelation` ``m -> n`` is an affine subspace of ``K^m (+) K^n``
(domain coordinates first, then codomain coordinates).  It is stored as the
solution set of ``A (u; v) = b`` where the augmented matrix ``[A | b]`` is in
reduced row echelon form with zero rows removed.  An inconsistent system is
replaced by the explicit empty relation, so two relations are equal exactly when
their stored data are equal.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, DimensionMismatch, FieldMismatch, IndexOutOfRange, TypeMismatch
from .exactlin import Matrix, _kernel_from_rref, _rref_rows
from .fields import Field, field_from_tag

__all__ = [
    "AffineRelation",
    "SpanForm",
    "compose",
    "tensor",
    "converse",
    "project",
    "image",
    "equal",
    "brute_force_relation",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class SpanForm:
    """``offset + span(basis)`` with a linearly independent basis."""

    offset: tuple
    basis: tuple[tuple, ...]


class AffineRelation:
    """Affine subspace of ``K^dom (+) K^cod`` in canonical constraint form."""

    __slots__ = ("field", "dom", "cod", "empty", "rows", "rhs", "_span")

    def __init__(self, field: Field, dom: int, cod: int, rows=(), rhs=(), empty=False):
        """Build from constraints ``rows . w = rhs``; canonicalizes on the way in."""
        self.field = field
        self.dom = dom
        self.cod = cod
        self._span = None
        n = dom + cod
        if empty:
            self.empty, self.rows, self.rhs = True, (), ()
            return
        rows = list(rows)
        rhs = list(rhs)
        if len(rows) != len(rhs):
            raise DimensionMismatch("constraint rows and right-hand side differ in length")
        aug = []
        for r, c in zip(rows, rhs):
            if len(r) != n:
                raise DimensionMismatch(f"constraint has {len(r)} columns, expected {n}")
            aug.append([field(v) for v in r] + [field(c)])
        pivots = _rref_rows(aug, n + 1)
        if pivots and pivots[-1] == n:
            self.empty, self.rows, self.rhs = True, (), ()
            return
        k = len(pivots)
        self.empty = False
        self.rows = tuple(tuple(r[:n]) for r in aug[:k])
        self.rhs = tuple(r[n] for r in aug[:k])

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty_relation(cls, field: Field, dom: int, cod: int) -> "AffineRelation":
        return cls(field, dom, cod, empty=True)

    @classmethod
    def full(cls, field: Field, dom: int, cod: int) -> "AffineRelation":
        return cls(field, dom, cod)

    @classmethod
    def identity(cls, field: Field, n: int) -> "AffineRelation":
        o, z = field.one, field.zero
        rows = []
        for i in range(n):
            r = [z] * (2 * n)
            r[i] = o
            r[n + i] = -o
            rows.append(r)
        return cls(field, n, n, rows, [z] * n)

    @classmethod
    def graph(cls, A: Matrix, shift: Sequence | None = None) -> "AffineRelation":
        """The relation ``{(u, A u + shift)}``."""
        f = A.field
        m, n = A.cols, A.rows
        shift = [f.zero] * n if shift is None else [f(v) for v in shift]
        rows = []
        for i in range(n):
            r = [-a for a in A.row(i)] + [f.zero] * n
            r[m + i] = f.one
            rows.append(r)
        return cls(f, m, n, rows, shift)

    @classmethod
    def from_span(cls, field: Field, dom: int, cod: int, offset: Sequence, basis: Sequence[Sequence]):
        """Affine hull of ``offset + span(basis)``; the basis may be dependent."""
        n = dom + cod
        offset = [field(v) for v in offset]
        if len(offset) != n:
            raise DimensionMismatch("offset length does not match the relation type")
        brows = [[field(v) for v in b] for b in basis]
        for b in brows:
            if len(b) != n:
                raise DimensionMismatch("basis vector length does not match the relation type")
        if brows:
            work = [list(r) for r in brows]
            piv = _rref_rows(work, n)
            ann = _kernel_from_rref(work, piv, n, field)
        else:
            ann = [tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)]
        rhs = [sum((a * o for a, o in zip(c, offset) if a and o), field.zero) for c in ann]
        return cls(field, dom, cod, ann, rhs)

    @classmethod
    def from_points(cls, field: Field, dom: int, cod: int, points: Sequence[Sequence]):
        """Affine hull of a finite point set (empty set gives the empty relation)."""
        pts = [tuple(field(v) for v in p) for p in points]
        if not pts:
            return cls.empty_relation(field, dom, cod)
        o = pts[0]
        return cls.from_span(field, dom, cod, o, [tuple(a - b for a, b in zip(p, o)) for p in pts[1:]])

    # -- views ------------------------------------------------------------

    @property
    def arity(self) -> int:
        return self.dom + self.cod

    def span(self) -> SpanForm | None:
        """Offset and basis of the linear part; ``None`` for the empty relation."""
        if self.empty:
            return None
        if self._span is None:
            f = self.field
            n = self.arity
            pivots = []
            for r in self.rows:
                pivots.append(next(j for j, v in enumerate(r) if v))
            offset = [f.zero] * n
            for p, c in zip(pivots, self.rhs):
                offset[p] = c
            basis = _kernel_from_rref([list(r) for r in self.rows], pivots, n, f)
            self._span = SpanForm(tuple(offset), tuple(basis))
        return self._span

    @property
    def dimension(self) -> int:
        """Dimension of the affine subspace, or -1 when empty."""
        return -1 if self.empty else self.arity - len(self.rows)

    def contains(self, point: Sequence) -> bool:
        if len(point) != self.arity:
            raise DimensionMismatch("point length does not match the relation type")
        if self.empty:
            return False
        f = self.field
        pt = [f(v) for v in point]
        for r, c in zip(self.rows, self.rhs):
            acc = f.zero
            for a, x in zip(r, pt):
                if a and x:
                    acc = acc + a * x
            if acc != c:
                return False
        return True

    def points(self) -> Iterator[tuple]:
        """Enumerate every point (finite fields only)."""
        sp = self.span()
        if sp is None:
            return
        elems = list(self.field.elements())
        for coeffs in itertools.product(elems, repeat=len(sp.basis)):
            v = list(sp.offset)
            for c, b in zip(coeffs, sp.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            yield tuple(v)

    def linear_part(self) -> "AffineRelation":
        if self.empty:
            raise ValueError("the empty relation has no linear part")
        return AffineRelation(self.field, self.dom, self.cod, self.rows, [self.field.zero] * len(self.rows))

    # -- comparison and serialization ---------------------------------------

    def _key(self):
        return (self.field.tag, self.dom, self.cod, self.empty, self.rows, self.rhs)

    def __eq__(self, other):
        if not isinstance(other, AffineRelation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def to_json(self) -> dict:
        f = self.field
        out = {"field": f.tag, "dom": self.dom, "cod": self.cod}
        if self.empty:
            out["empty"] = True
        else:
            out["constraints"] = {
                "A": [[f.format(v) for v in r] for r in self.rows],
                "b": [f.format(v) for v in self.rhs],
            }
        return out

    def dumps(self, pretty: bool = False) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2 if pretty else None)

    @classmethod
    def from_json(cls, data: dict) -> "AffineRelation":
        f = field_from_tag(data["field"])
        dom, cod = int(data["dom"]), int(data["cod"])
        if data.get("empty"):
            return cls.empty_relation(f, dom, cod)
        cons = data.get("constraints", {"A": [], "b": []})
        return cls(f, dom, cod, [[f.parse(v) for v in r] for r in cons["A"]], [f.parse(v) for v in cons["b"]])

    def __repr__(self):
        if self.empty:
            return f"AffineRelation[{self.field.tag}]({self.dom}->{self.cod}: empty)"
        eqs = []
        for r, c in zip(self.rows, self.rhs):
            eqs.append(" ".join(str(v) for v in r) + f" | {c}")
        return f"AffineRelation[{self.field.tag}]({self.dom}->{self.cod}: " + "; ".join(eqs) + ")"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _check_field(R: AffineRelation, S: AffineRelation):
    if R.field != S.field:
        raise FieldMismatch(f"{R.field.tag} vs {S.field.tag}")


def project(R: AffineRelation, keep: Sequence[int], dom: int = 0) -> AffineRelation:
    """Image of ``R`` under the coordinate projection onto ``keep`` (in that order).

    The first ``dom`` kept coordinates form the domain of the result.
    """
    keep = list(keep)
    if len(set(keep)) != len(keep):
        raise IndexOutOfRange("projection indices must be distinct")
    for k in keep:
        if not 0 <= k < R.arity:
            raise IndexOutOfRange(f"coordinate {k} out of range for arity {R.arity}")
    if not 0 <= dom <= len(keep):
        raise IndexOutOfRange("domain size exceeds the number of kept coordinates")
    cod = len(keep) - dom
    if R.empty:
        return AffineRelation.empty_relation(R.field, dom, cod)
    sp = R.span()
    return AffineRelation.from_span(
        R.field,
        dom,
        cod,
        [sp.offset[k] for k in keep],
        [[b[k] for k in keep] for b in sp.basis],
    )


def compose(R: AffineRelation, S: AffineRelation) -> AffineRelation:
    """Relational composite: first ``R : m -> k`` then ``S : k -> n``."""
    _check_field(R, S)
    if R.cod != S.dom:
        raise TypeMismatch(f"cannot compose {R.dom}->{R.cod} with {S.dom}->{S.cod}")
    f = R.field
    m, k, n = R.dom, R.cod, S.cod
    if R.empty or S.empty:
        return AffineRelation.empty_relation(f, m, n)
    z = f.zero
    rows, rhs = [], []
    for r, c in zip(R.rows, R.rhs):
        rows.append(list(r) + [z] * n)
        rhs.append(c)
    for r, c in zip(S.rows, S.rhs):
        rows.append([z] * m + list(r))
        rhs.append(c)
    joint = AffineRelation(f, m + k + n, 0, rows, rhs)
    return project(joint, list(range(m)) + list(range(m + k, m + k + n)), dom=m)


def tensor(R: AffineRelation, S: AffineRelation) -> AffineRelation:
    """Parallel composite; coordinates of ``S`` come after those of ``R`` on each side."""
    _check_field(R, S)
    f = R.field
    m1, n1, m2, n2 = R.dom, R.cod, S.dom, S.cod
    if R.empty or S.empty:
        return AffineRelation.empty_relation(f, m1 + m2, n1 + n2)
    z = f.zero
    rows, rhs = [], []
    for r, c in zip(R.rows, R.rhs):
        rows.append(list(r[:m1]) + [z] * m2 + list(r[m1:]) + [z] * n2)
        rhs.append(c)
    for r, c in zip(S.rows, S.rhs):
        rows.append([z] * m1 + list(r[:m2]) + [z] * n1 + list(r[m2:]))
        rhs.append(c)
    return AffineRelation(f, m1 + m2, n1 + n2, rows, rhs)


def converse(R: AffineRelation) -> AffineRelation:
    """``(v, u)`` is in the converse exactly when ``(u, v)`` is in ``R``."""
    if R.empty:
        return AffineRelation.empty_relation(R.field, R.cod, R.dom)
    m = R.dom
    rows = [tuple(r[m:]) + tuple(r[:m]) for r in R.rows]
    return AffineRelation(R.field, R.cod, R.dom, rows, R.rhs)


def image(R: AffineRelation) -> AffineRelation:
    """Projection onto the codomain, as a state ``0 -> cod``."""
    return project(R, range(R.dom, R.arity), dom=0)


def equal(R: AffineRelation, S: AffineRelation) -> bool:
    _check_field(R, S)
    if (R.dom, R.cod) != (S.dom, S.cod):
        raise TypeMismatch(f"cannot compare {R.dom}->{R.cod} with {S.dom}->{S.cod}")
    return R == S


def brute_force_relation(
    field: Field,
    dom: int,
    cod: int,
    member: Callable[[tuple], bool],
    budget: int = DEFAULT_BUDGET,
):
    """Enumerate every point of ``K^(dom+cod)`` and keep those accepted by ``member``.

    ``dom`` and ``cod`` count coordinates.  Returns the affine hull of the
    accepted points together with the point set itself.
    """
    if not field.finite:
        raise TypeError("brute-force enumeration needs a finite field")
    total = field.size ** (dom + cod)
    if total > budget:
        raise BudgetExceeded(f"{total} points exceed the budget of {budget}")
    elems = list(field.elements())
    pts = frozenset(p for p in itertools.product(elems, repeat=dom + cod) if member(p))
    return AffineRelation.from_points(field, dom, cod, sorted(pts, key=lambda p: [v.value for v in p])), pts

"""Diagram IR for affine Lagrangian (and, with discards, coisotropic) relations.

A :class:`Diagram` ``m -> n`` is an open multigraph.  Vertices are grey or
white spiders with a phase ``(a, b)`` (affine phase ``a``, symplectic phase
``b``) or 1-legged discards.  Edges join two *ends*: a leg of a vertex (tagged
``in`` or ``out``) or a boundary port.  An edge may carry a box label ``c``.

Semantics (:func:`interpret`), with one ``(z, x)`` pair per leg and port:

* grey ``(a, b)``: all legs share ``x``; ``sum_in z - sum_out z + b x = a``.
* white ``(a, b)``: in-legs carry ``z``, out-legs ``-z``;
  ``sum over legs of x - b z = a``.
* box ``c != 0``: ``(z, x) -> (-c x, z / c)``; box ``0``: ``{((0, x), (0, x'))}``.
* discard: no constraint.
* an edge joining an ``out``-end to an ``in``-end equates the two pairs; an edge
  joining two ends of the same polarity bends the wire, relating ``(z, x)`` to
  ``(-z, x)``.  This is the cup ``{(z, x, -z, x)}``, which is the two-legged
  phase-free grey spider.  An input port counts as an ``out``-end and an output
  port as an ``in``-end.

All three generators are flexsymmetric for this cup; one consequence is that the
phase-free one-in one-out white spider is the antipode ``(z, x) -> (-z, -x)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Iterable, Sequence

from .affrel import AffineRelation, project
from .errors import ContainsDiscard, FieldMismatch, InvalidArity, ParseError, TypeMismatch
from .fields import Field, field_from_tag

__all__ = [
    "End",
    "Edge",
    "Vertex",
    "Diagram",
    "Scalar",
    "grey",
    "white",
    "box",
    "discard",
    "identity",
    "cup",
    "cap",
    "swap",
    "permutation",
    "empty_diagram",
    "make_generator",
    "compose",
    "tensor",
    "dagger",
    "interpret",
    "scalar_value",
    "on_wires",
]

GREY, WHITE, DISCARD = "grey", "white", "discard"
IN, OUT = "in", "out"


def _flip(p: str) -> str:
    return OUT if p == IN else IN


@dataclass(frozen=True)
class End:
    """One end of an edge: a vertex leg, or an input/output port."""

    kind: str  # "vertex", "input" or "output"
    index: int  # vertex id or port number
    polarity: str = ""  # "in"/"out" for vertex legs

    @staticmethod
    def leg(vertex: int, polarity: str) -> "End":
        if polarity not in (IN, OUT):
            raise ValueError(f"bad polarity {polarity!r}")
        return End("vertex", vertex, polarity)

    @staticmethod
    def input(k: int) -> "End":
        return End("input", k)

    @staticmethod
    def output(k: int) -> "End":
        return End("output", k)

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    @property
    def pol(self) -> str:
        """Polarity used by the gluing rule."""
        if self.kind == "vertex":
            return self.polarity
        return OUT if self.kind == "input" else IN

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"vertex": self.index, "polarity": self.polarity}
        return {"boundary": self.kind, "index": self.index}

    @staticmethod
    def from_json(d: dict) -> "End":
        if "vertex" in d:
            return End.leg(int(d["vertex"]), d["polarity"])
        if d.get("boundary") in ("input", "output"):
            return End(d["boundary"], int(d["index"]))
        raise ParseError(f"bad edge end {d!r}")


@dataclass(frozen=True)
class Edge:
    a: End
    b: End
    box: object = None  # None for a plain wire, else a field element


@dataclass(frozen=True)
class Vertex:
    kind: str
    phase: tuple = ()

    def __post_init__(self):
        if self.kind not in (GREY, WHITE, DISCARD):
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        if self.kind == DISCARD and self.phase:
            raise ValueError("discards carry no phase")
        if self.kind != DISCARD and len(self.phase) != 2:
            raise ValueError("spider phases are pairs (affine, symplectic)")


class Scalar(str, Enum):
    UNIT = "UnitScalar"
    EMPTY = "EmptyScalar"


@dataclass(frozen=True)
class Diagram:
    field: Field
    vertices: dict = dc_field(default_factory=dict)  # id -> Vertex
    edges: tuple = ()
    n_in: int = 0
    n_out: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", dict(sorted(self.vertices.items())))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

    # -- validation -------------------------------------------------------

    def _validate(self):
        f = self.field
        for vid, v in self.vertices.items():
            for c in v.phase:
                if not f.contains(c):
                    raise FieldMismatch(f"phase {c!r} of vertex {vid} is not in {f.tag}")
        seen_in, seen_out = [], []
        legs = {vid: 0 for vid in self.vertices}
        for e in self.edges:
            if e.box is not None and not f.contains(e.box):
                raise FieldMismatch(f"box label {e.box!r} is not in {f.tag}")
            for end in (e.a, e.b):
                if end.kind == "vertex":
                    if end.index not in self.vertices:
                        raise ValueError(f"edge refers to missing vertex {end.index}")
                    legs[end.index] += 1
                    if self.vertices[end.index].kind == DISCARD and end.polarity != IN:
                        raise InvalidArity("a discard has a single input leg")
                elif end.kind == "input":
                    seen_in.append(end.index)
                else:
                    seen_out.append(end.index)
        if sorted(seen_in) != list(range(self.n_in)):
            raise InvalidArity("every input must be attached exactly once")
        if sorted(seen_out) != list(range(self.n_out)):
            raise InvalidArity("every output must be attached exactly once")
        for vid, v in self.vertices.items():
            if v.kind == DISCARD and legs[vid] != 1:
                raise InvalidArity("a discard has exactly one leg")

    # -- basic views --------------------------------------------------------

    @property
    def type(self) -> tuple[int, int]:
        return self.n_in, self.n_out

    @property
    def has_discard(self) -> bool:
        return any(v.kind == DISCARD for v in self.vertices.values())

    def legs(self, vid: int) -> list[tuple[int, int]]:
        """``(edge index, side)`` for every leg of a vertex, in edge order."""
        out = []
        for i, e in enumerate(self.edges):
            for side, end in enumerate((e.a, e.b)):
                if end.kind == "vertex" and end.index == vid:
                    out.append((i, side))
        return out

    def renumbered(self, offset: int = 0) -> "Diagram":
        """Same diagram with vertex ids ``offset, offset + 1, ...`` in sorted order."""
        mapping = {old: offset + i for i, old in enumerate(self.vertices)}
        return self._relabel(mapping)

    def _relabel(self, mapping: dict) -> "Diagram":
        def re(end: End) -> End:
            if end.kind == "vertex":
                return End.leg(mapping[end.index], end.polarity)
            return end

        return Diagram(
            self.field,
            {mapping[k]: v for k, v in self.vertices.items()},
            [Edge(re(e.a), re(e.b), e.box) for e in self.edges],
            self.n_in,
            self.n_out,
        )

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        f = self.field
        verts = []
        for vid, v in self.vertices.items():
            d = {"id": vid, "kind": v.kind}
            if v.kind != DISCARD:
                d["phase"] = [f.format(c) for c in v.phase]
            verts.append(d)
        edges = []
        ins = [0] * self.n_in
        outs = [0] * self.n_out
        for i, e in enumerate(self.edges):
            edges.append(
                {
                    "from": e.a.to_json(),
                    "to": e.b.to_json(),
                    "box": None if e.box is None else f.format(e.box),
                }
            )
            for end in (e.a, e.b):
                if end.kind == "input":
                    ins[end.index] = i
                elif end.kind == "output":
                    outs[end.index] = i
        return {"field": f.tag, "vertices": verts, "edges": edges, "inputs": ins, "outputs": outs}

    def dumps(self, pretty: bool = False) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2 if pretty else None)

    @staticmethod
    def from_json(data: dict) -> "Diagram":
        try:
            f = field_from_tag(data["field"])
            verts = {}
            for v in data["vertices"]:
                kind = v["kind"]
                phase = tuple(f.parse(c) for c in v.get("phase", ())) if kind != DISCARD else ()
                verts[int(v["id"])] = Vertex(kind, phase)
            edges = []
            for e in data["edges"]:
                bx = e.get("box")
                edges.append(
                    Edge(End.from_json(e["from"]), End.from_json(e["to"]), None if bx is None else f.parse(bx))
                )
            ins, outs = list(data["inputs"]), list(data["outputs"])
        except (KeyError, TypeError, AttributeError) as exc:
            raise ParseError(f"malformed diagram: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed diagram: {exc}") from exc
        try:
            d = Diagram(f, verts, edges, len(ins), len(outs))
        except (ValueError, FieldMismatch) as exc:
            raise ParseError(f"invalid diagram: {exc}") from exc
        check = d.to_json()
        if check["inputs"] != ins or check["outputs"] != outs:
            raise ParseError("inputs/outputs lists disagree with the boundary edges")
        return d

    @staticmethod
    def loads(text: str) -> "Diagram":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not JSON: {exc}") from exc
        return Diagram.from_json(data)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _spider(kind: str, field: Field, a, b, m: int, n: int) -> Diagram:
    if m < 0 or n < 0:
        raise InvalidArity("arities must be natural numbers")
    v = Vertex(kind, (field(a), field(b)))
    edges = [Edge(End.input(k), End.leg(0, IN)) for k in range(m)]
    edges += [Edge(End.leg(0, OUT), End.output(k)) for k in range(n)]
    return Diagram(field, {0: v}, edges, m, n)


def grey(field: Field, a=0, b=0, m: int = 1, n: int = 1) -> Diagram:
    return _spider(GREY, field, a, b, m, n)


def white(field: Field, a=0, b=0, m: int = 1, n: int = 1) -> Diagram:
    return _spider(WHITE, field, a, b, m, n)


def box(field: Field, c) -> Diagram:
    return Diagram(field, {}, [Edge(End.input(0), End.output(0), field(c))], 1, 1)


def discard(field: Field) -> Diagram:
    return Diagram(field, {0: Vertex(DISCARD)}, [Edge(End.input(0), End.leg(0, IN))], 1, 0)


def identity(field: Field, n: int = 1) -> Diagram:
    return Diagram(field, {}, [Edge(End.input(k), End.output(k)) for k in range(n)], n, n)


def empty_diagram(field: Field) -> Diagram:
    return Diagram(field)


def cup(field: Field) -> Diagram:
    return Diagram(field, {}, [Edge(End.output(0), End.output(1))], 0, 2)


def cap(field: Field) -> Diagram:
    return Diagram(field, {}, [Edge(End.input(0), End.input(1))], 2, 0)


def permutation(field: Field, perm: Sequence[int]) -> Diagram:
    """Wire ``k`` is sent to output ``perm[k]``."""
    if sorted(perm) != list(range(len(perm))):
        raise InvalidArity("not a permutation")
    return Diagram(field, {}, [Edge(End.input(k), End.output(p)) for k, p in enumerate(perm)], len(perm), len(perm))


def swap(field: Field) -> Diagram:
    return permutation(field, [1, 0])


def make_generator(field: Field, kind: str, params: Sequence = (), m: int = 1, n: int = 1) -> Diagram:
    """Build one generator by name: grey, white, box, discard, identity, cup, cap, swap."""
    if kind in (GREY, WHITE):
        a, b = (tuple(params) + (0, 0))[:2]
        return _spider(kind, field, a, b, m, n)
    if kind == "box":
        if (m, n) != (1, 1):
            raise InvalidArity("a box is 1 -> 1")
        return box(field, params[0] if params else 1)
    if kind == DISCARD:
        if (m, n) != (1, 0):
            raise InvalidArity("a discard is 1 -> 0")
        return discard(field)
    if kind == "identity":
        if m != n:
            raise InvalidArity("identity needs m == n")
        return identity(field, m)
    if kind == "cup":
        if (m, n) != (0, 2):
            raise InvalidArity("a cup is 0 -> 2")
        return cup(field)
    if kind == "cap":
        if (m, n) != (2, 0):
            raise InvalidArity("a cap is 2 -> 0")
        return cap(field)
    if kind == "swap":
        if (m, n) != (2, 2):
            raise InvalidArity("a swap is 2 -> 2")
        return swap(field)
    raise InvalidArity(f"unknown generator {kind!r}")


# ---------------------------------------------------------------------------
# Composition, tensor, dagger
# ---------------------------------------------------------------------------


def _same_field(D1: Diagram, D2: Diagram):
    if D1.field != D2.field:
        raise FieldMismatch(f"{D1.field.tag} vs {D2.field.tag}")


def compose(D1: Diagram, D2: Diagram) -> Diagram:
    """``D1`` followed by ``D2``: output ``k`` of ``D1`` is glued to input ``k`` of ``D2``.

    Where a boxed edge would meet another boxed edge, a phase-free grey
    spider is put between them instead of multiplying labels.
    """
    _same_field(D1, D2)
    if D1.n_out != D2.n_in:
        raise TypeMismatch(f"cannot compose {D1.type} with {D2.type}")
    f = D1.field
    A = D1.renumbered(0)
    B = D2.renumbered(len(A.vertices))
    verts = dict(A.vertices)
    verts.update(B.vertices)
    next_id = len(verts)

    # Glue points are ("mid", k, side): side 0 stands in for an output port of
    # D1 (an in-end), side 1 for an input port of D2 (an out-end).
    def mid_a(end: End):
        return ("mid", end.index, 0) if end.kind == "output" else end

    def mid_b(end: End):
        return ("mid", end.index, 1) if end.kind == "input" else end

    edges: list = [[mid_a(e.a), mid_a(e.b), e.box] for e in A.edges]
    edges += [[mid_b(e.a), mid_b(e.b), e.box] for e in B.edges]

    def is_mid(x, k):
        return isinstance(x, tuple) and x[1] == k

    for k in range(D1.n_out):
        touches = [(i, s) for i, e in enumerate(edges) if e is not None for s in (0, 1) if is_mid(e[s], k)]
        (i, si), (j, sj) = touches
        if i == j:
            edges[i] = None  # a closed loop: a homogeneous scalar, hence the unit
            continue
        e, g = edges[i], edges[j]
        o1, o2 = e[1 - si], g[1 - sj]
        if e[2] is not None and g[2] is not None:
            v = next_id
            next_id += 1
            verts[v] = Vertex(GREY, (f.zero, f.zero))
            pe = IN if e[si][2] == 0 else OUT
            pg = IN if g[sj][2] == 0 else OUT
            e[si] = End.leg(v, pe)
            g[sj] = End.leg(v, pg)
        else:
            bx = e[2] if e[2] is not None else g[2]
            edges[i] = [o1, o2, bx]
            edges[j] = None
    out = [Edge(a, b, bx) for a, b, bx in (e for e in edges if e is not None)]
    return Diagram(f, verts, out, D1.n_in, D2.n_out).renumbered()


def tensor(D1: Diagram, D2: Diagram) -> Diagram:
    _same_field(D1, D2)
    A = D1.renumbered(0)
    B = D2.renumbered(len(A.vertices))

    def shift(end: End) -> End:
        if end.kind == "input":
            return End.input(end.index + D1.n_in)
        if end.kind == "output":
            return End.output(end.index + D1.n_out)
        return end

    verts = dict(A.vertices)
    verts.update(B.vertices)
    edges = list(A.edges) + [Edge(shift(e.a), shift(e.b), e.box) for e in B.edges]
    return Diagram(D1.field, verts, edges, D1.n_in + D2.n_in, D1.n_out + D2.n_out)


def compose_all(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose(out, d)
    return out


def tensor_all(field: Field, *ds: Diagram) -> Diagram:
    out = empty_diagram(field)
    for d in ds:
        out = tensor(out, d)
    return out


def _dagger_phase(kind: str, phase: tuple) -> tuple:
    a, b = phase
    if kind == GREY:
        return (-a, -b)
    return (a, -b)


def dagger(D: Diagram) -> Diagram:
    """Mirror image: boundaries and leg polarities swap.

    Grey phases ``(a, b)`` become ``(-a, -b)``, white phases become ``(a, -b)``
    and box labels are negated, so that the result denotes the converse
    relation.
    """
    if D.has_discard:
        raise ContainsDiscard("discards have no dagger in this language")

    def flip(end: End) -> End:
        if end.kind == "vertex":
            return End.leg(end.index, _flip(end.polarity))
        return End("output" if end.kind == "input" else "input", end.index)

    verts = {k: Vertex(v.kind, _dagger_phase(v.kind, v.phase)) for k, v in D.vertices.items()}
    edges = [Edge(flip(e.b), flip(e.a), None if e.box is None else -e.box) for e in D.edges]
    return Diagram(D.field, verts, edges, D.n_out, D.n_in)


def on_wires(D: Diagram, wires: Sequence[int], total: int) -> Diagram:
    """``D : k -> k`` acting on the listed wires of a ``total``-wire register."""
    if D.n_in != D.n_out or D.n_in != len(wires):
        raise InvalidArity("on_wires needs a k -> k diagram and k wire positions")
    if len(set(wires)) != len(wires) or any(not 0 <= w < total for w in wires):
        raise InvalidArity("wire positions must be distinct and in range")

    def re(end: End) -> End:
        if end.kind == "input":
            return End.input(wires[end.index])
        if end.kind == "output":
            return End.output(wires[end.index])
        return end

    edges = [Edge(re(e.a), re(e.b), e.box) for e in D.edges]
    edges += [Edge(End.input(w), End.output(w)) for w in range(total) if w not in wires]
    return Diagram(D.field, dict(D.vertices), edges, total, total)


# ---------------------------------------------------------------------------
# Interpretation
# ---------------------------------------------------------------------------


class _System:
    """Accumulates sparse affine constraints over numbered variables."""

    def __init__(self, field: Field):
        self.f = field
        self.n = 0
        self.eqs: list[tuple[dict, object]] = []

    def var(self) -> int:
        self.n += 1
        return self.n - 1

    def pair(self) -> tuple[int, int]:
        return self.var(), self.var()

    def eq(self, coeffs: dict, rhs=None):
        self.eqs.append((coeffs, self.f.zero if rhs is None else rhs))

    def same(self, u: int, v: int, sign=1):
        """``v = sign * u``."""
        self.eq({v: self.f.one, u: -self.f.one * sign} if u != v else {v: self.f.one - sign * self.f.one})

    def join(self, p: tuple, q: tuple, bend: bool):
        if bend:
            self.same(p[0], q[0], -1)
        else:
            self.same(p[0], q[0])
        self.same(p[1], q[1])

    def relation(self, keep: Sequence[int], dom: int) -> AffineRelation:
        f = self.f
        rows, rhs = [], []
        for coeffs, c in self.eqs:
            r = [f.zero] * self.n
            for k, v in coeffs.items():
                r[k] = r[k] + v
            rows.append(r)
            rhs.append(c)
        joint = AffineRelation(f, self.n, 0, rows, rhs)
        return project(joint, keep, dom=dom)


def interpret(D: Diagram) -> AffineRelation:
    """The relation ``K^(2m) -> K^(2n)`` denoted by ``D : m -> n``."""
    f = D.field
    sysm = _System(f)
    end_var: dict[tuple[int, int], tuple[int, int]] = {}
    ports_in = [None] * D.n_in
    ports_out = [None] * D.n_out
    for i, e in enumerate(D.edges):
        for s, end in enumerate((e.a, e.b)):
            p = sysm.pair()
            end_var[(i, s)] = p
            if end.kind == "input":
                ports_in[end.index] = p
            elif end.kind == "output":
                ports_out[end.index] = p

    one = f.one
    for vid, v in D.vertices.items():
        legs = [(end_var[(i, s)], (D.edges[i].a, D.edges[i].b)[s].polarity) for i, s in D.legs(vid)]
        if v.kind == GREY:
            a, b = v.phase
            x = sysm.var()
            total = {x: b} if b else {}
            for (zl, xl), pol in legs:
                sysm.same(x, xl)
                total[zl] = total.get(zl, f.zero) + (one if pol == IN else -one)
            sysm.eq(total, a)
        elif v.kind == WHITE:
            a, b = v.phase
            z = sysm.var()
            total = {z: -b} if b else {}
            for (zl, xl), pol in legs:
                sysm.same(z, zl, 1 if pol == IN else -1)
                total[xl] = total.get(xl, f.zero) + one
            sysm.eq(total, a)

    for i, e in enumerate(D.edges):
        pa, pb = end_var[(i, 0)], end_var[(i, 1)]
        if e.box is None:
            sysm.join(pa, pb, e.a.pol == e.b.pol)
            continue
        tin, tout = sysm.pair(), sysm.pair()
        sysm.join(pa, tin, e.a.pol == IN)
        sysm.join(tout, pb, e.b.pol == OUT)
        c = e.box
        if c:
            sysm.eq({tout[0]: one, tin[1]: c})  # z_out = -c x_in
            sysm.eq({tout[1]: c, tin[0]: -one})  # c x_out = z_in
        else:
            sysm.eq({tin[0]: one})
            sysm.eq({tout[0]: one})

    keep = [v for p in ports_in for v in p] + [v for p in ports_out for v in p]
    return sysm.relation(keep, dom=2 * D.n_in)


def scalar_value(D: Diagram) -> Scalar:
    if D.type != (0, 0):
        raise TypeMismatch("scalar_value needs a diagram 0 -> 0")
    return Scalar.EMPTY if interpret(D).empty else Scalar.UNIT

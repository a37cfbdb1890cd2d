"""Qudit stabiliser circuits over an odd prime ``p``.

A wire carries a phase-space point ``(z, x)``.  Gates act as

* ``Fourier``: ``(z, x) -> (-x, z)``, the box labelled 1
* ``Phase``: ``(z, x) -> (z + x, x)``
* ``PauliX(a)``: ``(z, x) -> (z, x + a)``; ``PauliZ(a)``: ``(z, x) -> (z + a, x)``
* ``CX(c, t)``: ``z_c -> z_c - z_t``, ``x_t -> x_t + x_c``
* ``PrepZero`` starts a wire in ``{(z, 0)}``; ``PostselectZero`` ends it there.

Equality is up to scalars, as the calculus does not record global phases.
Over ``p = 2`` the same rules describe the Spekkens toy model (CSS fragment),
not qubit stabiliser theory, so building such a circuit requires ``toy=True``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .. import diagram as dg
from ..diagram import Diagram, Edge, End, Vertex, GREY, WHITE, IN, OUT
from ..errors import InvalidArity, NotSymmetric, ParseError, TypeMismatch
from ..fields import prime_field, Field
from ..normalize import decide_equal

__all__ = ["Gate", "StabCircuit", "stab_to_diagram", "graph_state", "stab_equal", "stab_possible", "gate_diagram"]

TOY_LABEL = "Spekkens toy model / CSS"

_ARITY = {
    "CX": 2,
    "Fourier": 1,
    "Phase": 1,
    "PauliX": 2,
    "PauliZ": 2,
    "PrepZero": 1,
    "PostselectZero": 1,
}


@dataclass(frozen=True)
class Gate:
    kind: str
    args: tuple

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ParseError(f"unknown gate {self.kind!r}")
        object.__setattr__(self, "args", tuple(int(a) for a in self.args))
        if len(self.args) != _ARITY[self.kind]:
            raise InvalidArity(f"{self.kind} takes {_ARITY[self.kind]} arguments")
        if self.kind == "CX" and self.args[0] == self.args[1]:
            raise InvalidArity("CX needs distinct control and target")

    @property
    def wires(self) -> tuple:
        if self.kind == "CX":
            return self.args
        return self.args[:1]


def CX(c: int, t: int) -> Gate:
    return Gate("CX", (c, t))


def Fourier(w: int) -> Gate:
    return Gate("Fourier", (w,))


def PhaseGate(w: int) -> Gate:
    return Gate("Phase", (w,))


def PauliX(w: int, a: int = 1) -> Gate:
    return Gate("PauliX", (w, a))


def PauliZ(w: int, a: int = 1) -> Gate:
    return Gate("PauliZ", (w, a))


def PrepZero(w: int) -> Gate:
    return Gate("PrepZero", (w,))


def PostselectZero(w: int) -> Gate:
    return Gate("PostselectZero", (w,))


@dataclass(frozen=True)
class StabCircuit:
    """Gates on wires ``0 .. wires-1``.

    A wire whose first gate is ``PrepZero`` is not an input, and one whose
    last gate is ``PostselectZero`` is not an output.
    """

    p: int
    wires: int
    gates: tuple = ()
    toy: bool = False

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        prime_field(self.p)  # validates primality
        if self.p == 2 and not self.toy:
            raise ValueError(f"p = 2 is the {TOY_LABEL}; pass toy=True")
        for g in self.gates:
            for w in g.wires:
                if not 0 <= w < self.wires:
                    raise InvalidArity(f"wire {w} out of range in {g.kind}")

    @property
    def field(self) -> Field:
        return prime_field(self.p)

    @property
    def label(self) -> str:
        return TOY_LABEL if self.p == 2 else f"qudit stabiliser, p = {self.p}"

    def then(self, *gates: Gate) -> "StabCircuit":
        return StabCircuit(self.p, self.wires, self.gates + gates, self.toy)

    def to_json(self) -> dict:
        d = {"p": self.p, "wires": self.wires, "gates": [{"kind": g.kind, "args": list(g.args)} for g in self.gates]}
        if self.toy:
            d["toy"] = True
        return d

    def dumps(self, pretty: bool = False) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2 if pretty else None)

    @staticmethod
    def from_json(data: dict) -> "StabCircuit":
        try:
            gates = [Gate(g["kind"], tuple(g.get("args", ()))) for g in data["gates"]]
            return StabCircuit(int(data["p"]), int(data["wires"]), gates, bool(data.get("toy", False)))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed circuit: {exc}") from exc

    @staticmethod
    def loads(text: str) -> "StabCircuit":
        try:
            return StabCircuit.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"not JSON: {exc}") from exc


def _cx(f: Field) -> Diagram:
    verts = {0: Vertex(GREY, (f.zero, f.zero)), 1: Vertex(WHITE, (f.zero, f.zero)), 2: Vertex(WHITE, (f.zero, f.zero))}
    edges = [
        Edge(End.input(0), End.leg(0, IN)),
        Edge(End.leg(0, OUT), End.output(0)),
        Edge(End.leg(0, OUT), End.leg(1, IN)),
        Edge(End.input(1), End.leg(1, IN)),
        Edge(End.leg(1, OUT), End.leg(2, IN)),
        Edge(End.leg(2, OUT), End.output(1)),
    ]
    return Diagram(f, verts, edges, 2, 2)


def gate_diagram(f: Field, g: Gate) -> Diagram:
    """Diagram of a single gate on its own wires."""
    antipode = dg.white(f, 0, 0)
    if g.kind == "CX":
        return _cx(f)
    if g.kind == "Fourier":
        return dg.box(f, 1)
    if g.kind == "Phase":
        return dg.grey(f, 0, 1)
    if g.kind == "PauliX":
        return dg.compose(dg.white(f, -f(g.args[1]), 0), antipode)
    if g.kind == "PauliZ":
        return dg.grey(f, -f(g.args[1]), 0)
    if g.kind == "PrepZero":
        return dg.white(f, 0, 0, 0, 1)
    return dg.white(f, 0, 0, 1, 0)


def stab_to_diagram(c: StabCircuit) -> Diagram:
    f = c.field
    first, last = {}, {}
    for g in c.gates:
        for w in g.wires:
            first.setdefault(w, g.kind)
            last[w] = g.kind
    live = sorted(w for w in range(c.wires) if first.get(w) != "PrepZero")
    D = dg.identity(f, len(live))
    for g in c.gates:
        if g.kind == "PrepZero":
            w = g.args[0]
            if w in live:
                raise InvalidArity(f"PrepZero on live wire {w}")
            pos = sum(1 for v in live if v < w)
            layer = dg.tensor_all(f, dg.identity(f, pos), gate_diagram(f, g), dg.identity(f, len(live) - pos))
            live.insert(pos, w)
        elif g.kind == "PostselectZero":
            w = g.args[0]
            if w not in live:
                raise InvalidArity(f"PostselectZero on dead wire {w}")
            pos = live.index(w)
            layer = dg.tensor_all(f, dg.identity(f, pos), gate_diagram(f, g), dg.identity(f, len(live) - pos - 1))
            live.remove(w)
        else:
            for w in g.wires:
                if w not in live:
                    raise InvalidArity(f"{g.kind} on dead wire {w}")
            layer = dg.on_wires(gate_diagram(f, g), [live.index(w) for w in g.wires], len(live))
        D = dg.compose(D, layer)
    return D


def graph_state(G: Sequence[Sequence], field: Field) -> Diagram:
    """Grey spiders, one per vertex with one output, joined by boxes ``G_ij``.

    Diagonal entries become symplectic phases (local phase gates).
    """
    rows = [[field(v) for v in r] for r in G]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NotSymmetric("graph matrix must be square")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric("graph matrix is not symmetric")
    verts = {i: Vertex(GREY, (field.zero, rows[i][i])) for i in range(n)}
    edges = [Edge(End.leg(i, OUT), End.output(i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j]:
                edges.append(Edge(End.leg(i, OUT), End.leg(j, IN), rows[i][j]))
    return Diagram(field, verts, edges, 0, n)


def _check_pair(c1: StabCircuit, c2: StabCircuit):
    if c1.p != c2.p or c1.wires != c2.wires:
        raise TypeMismatch("circuits differ in dimension or wire count")


def stab_equal(c1: StabCircuit, c2: StabCircuit) -> bool:
    """Equal up to scalars."""
    _check_pair(c1, c2)
    d1, d2 = stab_to_diagram(c1), stab_to_diagram(c2)
    if d1.type != d2.type:
        raise TypeMismatch(f"circuit types differ: {d1.type} vs {d2.type}")
    return decide_equal(d1, d2)


def stab_possible(c: StabCircuit) -> bool:
    """False exactly when the postselections can never succeed."""
    return not dg.interpret(stab_to_diagram(c)).empty

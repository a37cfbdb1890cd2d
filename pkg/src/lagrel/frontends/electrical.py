"""Linear electrical networks.

Each wire carries ``(z, x)`` = (current, potential).  A node is a junction
(phase-free grey spider: potentials agree, currents balance).  Two-terminal
components between ``n1`` and ``n2``:

* resistor ``r``: ``(i, phi) -> (i, phi + r i)``
* voltage source ``v``: ``(i, phi) -> (i, phi + v)``
* current source ``c``: the current is forced to ``c``, potentials unrelated
* inductor ``l`` and capacitor ``c``: resistors ``l s`` and ``1 / (c s)`` over ``Q(s)``

A port exposes its node as an output wire; ``GROUND`` pins a node's potential
to zero.  With these signs a single resistor ``r`` from a port to ground has
behaviour ``{(z, x) : x = r z}``, and a network of resistors has behaviour
``x = R z`` for its impedance matrix ``R``.

Netlist text, one item per line (``#`` starts a comment)::

    R name n1 n2 value
    V name n1 n2 value
    I name n1 n2 value
    L name n1 n2 value
    C name n1 n2 value
    PORT name node
    GROUND node
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .. import diagram as dg
from ..affrel import AffineRelation
from ..diagram import Diagram, Edge, End, Vertex, GREY, WHITE, IN, OUT
from ..errors import DanglingNode, NotSymmetric, ParseError
from ..exactlin import Matrix, inverse
from ..errors import DivisionByZero
from ..fields import Q, QS, Field

__all__ = [
    "Component",
    "Netlist",
    "parse_netlist",
    "netlist_to_diagram",
    "component_diagram",
    "impedance_matrix",
    "impedance_of",
    "impedance_diagram",
    "NotReciprocal",
    "NotImpedanceForm",
]

_TWO_TERMINAL = ("R", "V", "I", "L", "C")


@dataclass(frozen=True)
class Component:
    kind: str  # R, V, I, L or C
    name: str
    n1: str
    n2: str
    value: Fraction


@dataclass(frozen=True)
class Netlist:
    components: tuple = ()
    ports: tuple = ()  # (name, node) in declaration order
    grounds: tuple = ()

    def __post_init__(self):
        for c in self.components:
            if c.kind not in _TWO_TERMINAL:
                raise ParseError(f"unknown component kind {c.kind!r}")
            if c.kind in ("R", "L", "C") and c.value <= 0:
                raise ParseError(f"{c.kind} {c.name} needs a positive value")

    @property
    def nodes(self) -> list[str]:
        """Node names in order of first mention."""
        seen = {}
        for c in self.components:
            seen.setdefault(c.n1, None)
            seen.setdefault(c.n2, None)
        for _, n in self.ports:
            seen.setdefault(n, None)
        for n in self.grounds:
            seen.setdefault(n, None)
        return list(seen)

    @property
    def reactive(self) -> bool:
        return any(c.kind in ("L", "C") for c in self.components)

    @property
    def field(self) -> Field:
        return QS if self.reactive else Q


def _value(tok: str, lineno: int) -> Fraction:
    try:
        return Q.parse(tok)
    except ParseError as exc:
        raise ParseError(f"line {lineno}: bad value {tok!r}") from exc


def parse_netlist(text: str) -> Netlist:
    comps, ports, grounds = [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0].upper()
        if head in _TWO_TERMINAL:
            if len(tok) != 5:
                raise ParseError(f"line {lineno}: expected '{head} name n1 n2 value'")
            comps.append(Component(head, tok[1], tok[2], tok[3], _value(tok[4], lineno)))
        elif head == "PORT":
            if len(tok) != 3:
                raise ParseError(f"line {lineno}: expected 'PORT name node'")
            ports.append((tok[1], tok[2]))
        elif head == "GROUND":
            if len(tok) != 2:
                raise ParseError(f"line {lineno}: expected 'GROUND node'")
            grounds.append(tok[1])
        else:
            raise ParseError(f"line {lineno}: unknown item {tok[0]!r}")
    return Netlist(tuple(comps), tuple(ports), tuple(grounds))


def resistor(f: Field, r) -> Diagram:
    return dg.compose(dg.white(f, 0, -f(r)), dg.white(f, 0, 0))


def component_diagram(f: Field, c: Component) -> Diagram:
    """The ``1 -> 1`` diagram of one component, current flowing ``n1 -> n2``."""
    v = f(c.value)
    if c.kind == "R":
        return resistor(f, v)
    if c.kind == "L":
        return resistor(f, v * f.s)
    if c.kind == "C":
        return resistor(f, 1 / (v * f.s))
    if c.kind == "V":
        return dg.compose(dg.white(f, -v, 0), dg.white(f, 0, 0))
    return dg.tensor(dg.grey(f, v, 0, 1, 0), dg.grey(f, -v, 0, 0, 1))


def netlist_to_diagram(nl: Netlist, field: Field | None = None) -> Diagram:
    f = field or nl.field
    nodes = nl.nodes
    used = {c.n1 for c in nl.components} | {c.n2 for c in nl.components}
    for n in nodes:
        if n not in used:
            raise DanglingNode(f"node {n!r} has no components attached")
    idx = {n: i for i, n in enumerate(nodes)}
    verts = {i: Vertex(GREY, (f.zero, f.zero)) for i in range(len(nodes))}
    edges = []
    for c in nl.components:
        D = component_diagram(f, c).renumbered(len(verts))
        verts.update(D.vertices)
        a, b = idx[c.n1], idx[c.n2]

        def re(end: End, a=a, b=b) -> End:
            if end.kind == "input":
                return End.leg(a, OUT)
            if end.kind == "output":
                return End.leg(b, IN)
            return end

        edges += [Edge(re(e.a), re(e.b), e.box) for e in D.edges]
    for n in nl.grounds:
        g = len(verts)
        verts[g] = Vertex(WHITE, (f.zero, f.zero))
        edges.append(Edge(End.leg(idx[n], OUT), End.leg(g, IN)))
    for k, (_, n) in enumerate(nl.ports):
        edges.append(Edge(End.leg(idx[n], OUT), End.output(k)))
    return Diagram(f, verts, edges, 0, len(nl.ports))


@dataclass(frozen=True)
class NotReciprocal:
    """The behaviour is ``x = R z`` with ``R`` not symmetric."""

    R: Matrix

    def __bool__(self):
        return False


@dataclass(frozen=True)
class NotImpedanceForm:
    reason: str

    def __bool__(self):
        return False


def impedance_of(R: AffineRelation) -> Matrix | NotReciprocal | NotImpedanceForm:
    """``R`` such that the state ``R`` equals ``{(z, x) : x = R z}``."""
    f = R.field
    if R.dom or R.cod % 2:
        return NotImpedanceForm("not a state on wires")
    n = R.cod // 2
    if R.empty:
        return NotImpedanceForm("empty behaviour")
    sp = R.span()
    if len(sp.basis) != n:
        return NotImpedanceForm("not one free current per port")
    if n == 0:
        return Matrix(f, [], cols=0)
    Zb = Matrix(f, [[b[2 * k] for b in sp.basis] for k in range(n)], cols=n)
    Xb = Matrix(f, [[b[2 * k + 1] for b in sp.basis] for k in range(n)], cols=n)
    try:
        Zi = inverse(Zb)
    except DivisionByZero:
        return NotImpedanceForm("currents do not determine potentials")
    M = Xb @ Zi
    o = sp.offset
    shift = [a - b for a, b in zip([o[2 * k + 1] for k in range(n)], M.apply([o[2 * k] for k in range(n)]))]
    if any(shift):
        return NotImpedanceForm("behaviour has a source offset")
    if not M.is_symmetric():
        return NotReciprocal(M)
    return M


def impedance_matrix(nl: Netlist) -> Matrix | NotReciprocal | NotImpedanceForm:
    return impedance_of(dg.interpret(netlist_to_diagram(nl)))


def impedance_diagram(R: Matrix | Sequence[Sequence], field: Field | None = None) -> Diagram:
    """A diagram with behaviour ``x = R z``: a graph state with weights ``R_ij``
    and phases ``-R_ii``, followed by box ``-1`` on every wire."""
    from .stabiliser import graph_state

    f = field or (R.field if isinstance(R, Matrix) else Q)
    rows = [[f(v) for v in r] for r in R]
    n = len(rows)
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric("impedance matrix must be symmetric")
    G = [[-rows[i][j] if i == j else rows[i][j] for j in range(n)] for i in range(n)]
    out = graph_state(G, f)
    boxes = dg.tensor_all(f, *[dg.box(f, -1) for _ in range(n)])
    return dg.compose(out, boxes)

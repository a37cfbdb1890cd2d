"""Normal forms for discard-free diagrams: graph-like form, local
complementation, pivoting, AP-form and the reduced AP-form.

Every diagram ``m -> n`` is first bent into a state on ``m + n`` wires (inputs
first, each bent through the cup so ``(z, x)`` becomes ``(-z, x)``).  States
are handled as :class:`GraphLikeState`: grey spiders only, box-weighted edges,
one boundary vertex per output.  Writing ``xi_v`` for the shared ``x`` of
vertex ``v`` and ``w_uv`` for edge weights, vertex ``v`` imposes

    b_v xi_v - sum_u w_uv xi_u - [z of its output, if boundary] = a_v

and boundary vertex ``v`` on output ``k`` sets ``x_k = xi_v``.  Eliminating
internal vertices is Gaussian elimination on these equations, which is what
local complementation and pivoting do one or two vertices at a time.

The reduced AP-form of a state is the tuple ``(sigma, F, x, S, s)`` with

    X_P = -x - F X_N,       z_N - F^T z_P = Y X_N - s,

where ``P`` are the pivot wires (listed first in ``sigma``), ``N`` the rest,
``Y`` has diagonal ``S_jj`` and off-diagonal ``-S_jl``.  It is a function of
the relation alone, so two diagrams are equal iff their forms coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .affrel import AffineRelation, equal as rel_equal
from .diagram import GREY, WHITE, DISCARD, IN, OUT, Diagram, Edge, End, Vertex, interpret
from .errors import (
    ContainsDiscard,
    FieldMismatch,
    NotAPForm,
    NotConnected,
    NotInternal,
    NotSymmetric,
    TypeMismatch,
    ZeroEdge,
    ZeroSymplecticPhase,
    InvalidArity,
)
from .exactlin import Matrix, _rref_rows, inverse
from .fields import Field
from .symplectic import classify, Kind

__all__ = [
    "GVertex",
    "GraphLikeState",
    "EmptyForm",
    "Form",
    "bend",
    "unbend",
    "to_graph_like",
    "local_complement",
    "pivot",
    "eliminate",
    "to_ap_form",
    "is_ap_form",
    "to_reduced_ap",
    "normal_form",
    "canonical_form",
    "decide_equal",
]


# ---------------------------------------------------------------------------
# Bending inputs into outputs
# ---------------------------------------------------------------------------


def bend(R: AffineRelation) -> AffineRelation:
    """The state on ``m + n`` wires obtained by bending every input of ``R``."""
    f = R.field
    k = R.dom
    rows = []
    for r in R.rows:
        r = list(r)
        for i in range(0, k, 2):
            r[i] = -r[i]
        rows.append(r)
    return AffineRelation(f, 0, R.dom + R.cod, rows, R.rhs, empty=R.empty)


def unbend(R: AffineRelation, m: int) -> AffineRelation:
    """Inverse of :func:`bend`: the first ``m`` wires of a state become inputs."""
    if R.dom:
        raise TypeMismatch("unbend expects a state")
    f = R.field
    rows = []
    for r in R.rows:
        r = list(r)
        for i in range(0, 2 * m, 2):
            r[i] = -r[i]
        rows.append(r)
    return AffineRelation(f, 2 * m, R.cod - 2 * m, rows, R.rhs, empty=R.empty)


def _bend_diagram(D: Diagram) -> Diagram:
    def re(end: End) -> End:
        if end.kind == "input":
            return End.output(end.index)
        if end.kind == "output":
            return End.output(end.index + D.n_in)
        return end

    return Diagram(D.field, dict(D.vertices), [Edge(re(e.a), re(e.b), e.box) for e in D.edges], 0, D.n_in + D.n_out)


def _unbend_diagram(D: Diagram, m: int) -> Diagram:
    def re(end: End) -> End:
        if end.kind == "output":
            return End.input(end.index) if end.index < m else End.output(end.index - m)
        return end

    return Diagram(D.field, dict(D.vertices), [Edge(re(e.a), re(e.b), e.box) for e in D.edges], m, D.n_out - m)


# ---------------------------------------------------------------------------
# Graph-like states
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GVertex:
    a: object
    b: object
    output: int | None = None  # port index for boundary vertices

    @property
    def internal(self) -> bool:
        return self.output is None


@dataclass(frozen=True)
class GraphLikeState:
    """Grey spiders with symmetric box-weight adjacency, as a state on ``n_outputs`` wires."""

    field: Field
    n_outputs: int
    vertices: tuple
    adjacency: tuple  # tuple of row tuples

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "adjacency", tuple(tuple(self.field(v) for v in r) for r in self.adjacency))
        n = len(self.vertices)
        A = self.adjacency
        if len(A) != n or any(len(r) != n for r in A):
            raise InvalidArity("adjacency must be square with one row per vertex")
        for i in range(n):
            if A[i][i]:
                raise NotSymmetric("graph-like states have no self-loops")
            for j in range(i):
                if A[i][j] != A[j][i]:
                    raise NotSymmetric("adjacency is not symmetric")
        outs = sorted(v.output for v in self.vertices if v.output is not None)
        if outs != list(range(self.n_outputs)):
            raise InvalidArity("each output needs exactly one boundary vertex")

    @property
    def internal(self) -> list[int]:
        return [i for i, v in enumerate(self.vertices) if v.internal]

    def boundary_vertex(self, k: int) -> int:
        return next(i for i, v in enumerate(self.vertices) if v.output == k)

    def neighbours(self, v: int) -> list[int]:
        return [u for u, w in enumerate(self.adjacency[v]) if w]

    def relation(self) -> AffineRelation:
        """Semantics, computed directly from the vertex equations."""
        f = self.field
        n = self.n_outputs
        inner = self.internal
        col = {}
        for i, v in enumerate(self.vertices):
            col[i] = 2 * v.output + 1 if v.output is not None else None
        for j, i in enumerate(inner):
            col[i] = 2 * n + j
        width = 2 * n + len(inner)
        rows, rhs = [], []
        for i, v in enumerate(self.vertices):
            r = [f.zero] * width
            r[col[i]] = r[col[i]] + v.b
            for u, w in enumerate(self.adjacency[i]):
                if w:
                    r[col[u]] = r[col[u]] - w
            if v.output is not None:
                r[2 * v.output] = r[2 * v.output] - f.one
            rows.append(r)
            rhs.append(v.a)
        from .affrel import project

        return project(AffineRelation(f, width, 0, rows, rhs), list(range(2 * n)))

    def to_diagram(self) -> Diagram:
        f = self.field
        verts = {i: Vertex(GREY, (v.a, v.b)) for i, v in enumerate(self.vertices)}
        edges = []
        for i, v in enumerate(self.vertices):
            if v.output is not None:
                edges.append(Edge(End.leg(i, OUT), End.output(v.output)))
        n = len(self.vertices)
        for i in range(n):
            for j in range(i + 1, n):
                w = self.adjacency[i][j]
                if w:
                    edges.append(Edge(End.leg(i, OUT), End.leg(j, IN), w))
        return Diagram(f, verts, edges, 0, self.n_outputs)

    def _with(self, vertices, adjacency) -> "GraphLikeState":
        return GraphLikeState(self.field, self.n_outputs, tuple(vertices), tuple(tuple(r) for r in adjacency))


def graph_like_from_matrix(field: Field, G: Matrix | Sequence[Sequence], phases: Sequence | None = None) -> GraphLikeState:
    """Boundary-only state: vertex ``i`` has phase ``(a_i, G_ii)``, edge weights ``G_ij``."""
    rows = [[field(v) for v in r] for r in G]
    n = len(rows)
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric("graph matrix is not symmetric")
    a = [field(v) for v in phases] if phases is not None else [field.zero] * n
    verts = [GVertex(a[i], rows[i][i], i) for i in range(n)]
    adj = [[field.zero if i == j else rows[i][j] for j in range(n)] for i in range(n)]
    return GraphLikeState(field, n, verts, adj)


def to_graph_like(D: Diagram) -> tuple[GraphLikeState, tuple[int, int]]:
    """Rewrite ``D`` into a graph-like state; also returns the split ``(m, n)``.

    Steps: bend inputs into outputs; recolour whites into greys with a
    Fourier box on every leg; separate consecutive boxes by identity spiders;
    fuse along plain wires (plain self-loops vanish, a box self-loop of weight
    ``c`` shifts the symplectic phase by ``-2c``); give every port its own
    boundary spider; add parallel box weights and drop zero ones.
    """
    if D.has_discard:
        raise ContainsDiscard("graph-like form is only defined without discards")
    f = D.field
    split = D.type
    S = _bend_diagram(D)
    zero, one = f.zero, f.one

    phase: dict[int, list] = {}
    white = set()
    for vid, v in S.vertices.items():
        a, b = v.phase
        if v.kind == WHITE:
            white.add(vid)
            phase[vid] = [-a, b]
        else:
            phase[vid] = [a, b]
    next_id = max(phase, default=-1) + 1

    def fresh():
        nonlocal next_id
        phase[next_id] = [zero, zero]
        next_id += 1
        return next_id - 1

    def key(end: End):
        return ("v", end.index) if end.kind == "vertex" else ("p", end.index)

    edges = []  # [end, end, weight or None]
    for e in S.edges:
        ka, kb = key(e.a), key(e.b)
        boxes = []
        if ka[0] == "v" and ka[1] in white:
            boxes.append(one)
        if e.box is not None:
            boxes.append(e.box)
        if kb[0] == "v" and kb[1] in white:
            boxes.append(one)
        if not boxes:
            edges.append([ka, kb, None])
            continue
        prev = ka
        for c in boxes[:-1]:
            g = ("v", fresh())
            edges.append([prev, g, c])
            prev = g
        edges.append([prev, kb, boxes[-1]])

    # fuse along plain vertex-vertex wires
    parent = {v: v for v in phase}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for ea, eb, w in edges:
        if w is None and ea[0] == "v" and eb[0] == "v":
            ra, rb = find(ea[1]), find(eb[1])
            if ra != rb:
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo
    fused: dict[int, list] = {}
    for v in sorted(phase):
        r = find(v)
        acc = fused.setdefault(r, [zero, zero])
        acc[0] = acc[0] + phase[v][0]
        acc[1] = acc[1] + phase[v][1]
    phase = fused

    def canon(end):
        return ("v", find(end[1])) if end[0] == "v" else end

    edges2 = []
    for ea, eb, w in edges:
        ea, eb = canon(ea), canon(eb)
        if ea[0] == "v" and ea == eb:
            if w is not None:
                phase[ea[1]][1] = phase[ea[1]][1] - 2 * w
            continue
        edges2.append([ea, eb, w])

    # every port gets a boundary spider reached by a plain wire
    ports: dict[int, list[int]] = {v: [] for v in phase}
    weight: dict[tuple[int, int], object] = {}

    def add_weight(u, v, w):
        u, v = min(u, v), max(u, v)
        weight[(u, v)] = weight.get((u, v), zero) + w

    for ea, eb, w in edges2:
        if ea[0] == "v" and eb[0] == "v":
            add_weight(ea[1], eb[1], w)
            continue
        if ea[0] == "v":
            ea, eb = eb, ea
        if eb[0] == "v" and w is None:
            ports[eb[1]].append(ea[1])
        elif eb[0] == "v":
            g = fresh()
            ports[g] = [ea[1]]
            add_weight(g, eb[1], w)
        elif w is None:
            g = fresh()
            ports[g] = [ea[1], eb[1]]
        else:
            g1, g2 = fresh(), fresh()
            ports[g1], ports[g2] = [ea[1]], [eb[1]]
            add_weight(g1, g2, w)

    # split spiders carrying several ports: v --1-- g1 --(-1)-- g2 -- port
    ids = sorted(phase)
    owner: dict[int, int] = {}
    for v in ids:
        ps = sorted(ports[v])
        if not ps:
            continue
        owner[ps[0]] = v
        for p in ps[1:]:
            g1 = fresh()
            g2 = fresh()
            weight[(v, g1)] = one
            weight[(g1, g2)] = -one
            owner[p] = g2

    order = sorted(phase)
    pos = {v: i for i, v in enumerate(order)}
    out_of = {v: k for k, v in owner.items()}
    verts = [GVertex(phase[v][0], phase[v][1], out_of.get(v)) for v in order]
    n = len(order)
    adj = [[zero] * n for _ in range(n)]
    for (u, v), w in weight.items():
        if w:
            adj[pos[u]][pos[v]] = w
            adj[pos[v]][pos[u]] = w
    return GraphLikeState(f, S.n_out, verts, adj), split


# ---------------------------------------------------------------------------
# Local complementation, pivoting, generic elimination
# ---------------------------------------------------------------------------


def local_complement(G: GraphLikeState, v: int) -> GraphLikeState:
    """Remove internal ``v`` with phase ``(a, z)``, ``z != 0``.

    For neighbours ``i, j`` with weights ``E_i``:
    ``a_i += E_i a / z``, ``b_i -= E_i^2 / z``, ``w_ij += E_i E_j / z``.
    """
    if not 0 <= v < len(G.vertices) or not G.vertices[v].internal:
        raise NotInternal(f"vertex {v} is not internal")
    a, z = G.vertices[v].a, G.vertices[v].b
    if not z:
        raise ZeroSymplecticPhase(f"vertex {v} has symplectic phase 0")
    zi = 1 / z
    E = G.adjacency[v]
    verts = list(G.vertices)
    adj = [list(r) for r in G.adjacency]
    nb = G.neighbours(v)
    for i in nb:
        old = verts[i]
        verts[i] = GVertex(old.a + E[i] * a * zi, old.b - zi * E[i] * E[i], old.output)
        for j in nb:
            if j != i:
                adj[i][j] = adj[i][j] + zi * E[i] * E[j]
    return _delete(G, verts, adj, [v])


def pivot(G: GraphLikeState, u: int, v: int) -> GraphLikeState:
    """Remove connected internal ``u, v`` with phases ``(a, 0), (b, 0)`` and edge ``eps``.

    With ``E1, E2`` the weights to ``u`` and ``v``:
    ``a_i -= (E1_i b + E2_i a) / eps``, ``b_i += 2 E1_i E2_i / eps`` and
    ``w_ij -= (E1_i E2_j + E1_j E2_i) / eps``.
    """
    n = len(G.vertices)
    for t in (u, v):
        if not 0 <= t < n or not G.vertices[t].internal:
            raise NotInternal(f"vertex {t} is not internal")
    if u == v:
        raise NotConnected("pivot needs two distinct vertices")
    eps = G.adjacency[u][v]
    if not eps:
        raise ZeroEdge(f"vertices {u} and {v} are not connected")
    a, b = G.vertices[u].a, G.vertices[v].a
    if G.vertices[u].b or G.vertices[v].b:
        raise ZeroSymplecticPhase("pivot needs symplectic phases 0 on both vertices")
    ei = 1 / eps
    E1, E2 = G.adjacency[u], G.adjacency[v]
    verts = list(G.vertices)
    adj = [list(r) for r in G.adjacency]
    rest = [i for i in range(n) if i not in (u, v) and (E1[i] or E2[i])]
    for i in rest:
        old = verts[i]
        verts[i] = GVertex(old.a - ei * (E1[i] * b + E2[i] * a), old.b + 2 * ei * E1[i] * E2[i], old.output)
        for j in rest:
            if j != i:
                adj[i][j] = adj[i][j] - ei * (E1[i] * E2[j] + E1[j] * E2[i])
    return _delete(G, verts, adj, [u, v])


def eliminate(G: GraphLikeState, vs: Sequence[int]) -> GraphLikeState:
    """Remove a set of internal vertices whose block of the vertex equations is invertible.

    Writing ``Y`` for the matrix with diagonal ``b`` and off-diagonal ``-w``,
    the rest becomes ``Y_RR - Y_RI Y_II^-1 Y_IR`` with phases
    ``a_R - Y_RI Y_II^-1 a_I``.
    """
    f = G.field
    vs = sorted(set(vs))
    for t in vs:
        if not G.vertices[t].internal:
            raise NotInternal(f"vertex {t} is not internal")
    n = len(G.vertices)
    rest = [i for i in range(n) if i not in vs]

    def y(i, j):
        return G.vertices[i].b if i == j else -G.adjacency[i][j]

    Yii = Matrix(f, [[y(i, j) for j in vs] for i in vs], cols=len(vs))
    inv = inverse(Yii)
    Yri = Matrix(f, [[y(i, j) for j in vs] for i in rest], cols=len(vs))
    K = Yri @ inv
    corr = K @ Matrix(f, [[y(i, j) for j in rest] for i in vs], cols=len(rest))
    da = K.apply([G.vertices[i].a for i in vs])
    verts = list(G.vertices)
    adj = [list(r) for r in G.adjacency]
    for p, i in enumerate(rest):
        old = verts[i]
        verts[i] = GVertex(old.a - da[p], old.b - corr[p, p], old.output)
        for q, j in enumerate(rest):
            if i != j:
                adj[i][j] = adj[i][j] + corr[p, q]
    return _delete(G, verts, adj, vs)


def _delete(G: GraphLikeState, verts, adj, gone) -> GraphLikeState:
    keep = [i for i in range(len(verts)) if i not in gone]
    return G._with([verts[i] for i in keep], [[adj[i][j] for j in keep] for i in keep])


def is_ap_form(G: GraphLikeState) -> bool:
    inner = G.internal
    if any(G.vertices[i].b for i in inner):
        return False
    return not any(G.adjacency[i][j] for i in inner for j in inner)


def to_ap_form(G: GraphLikeState) -> GraphLikeState:
    """Local-complement or pivot away internal vertices until AP-form holds.

    The lowest eligible vertex goes first; local complementation is preferred.
    """
    while True:
        inner = G.internal
        lc = next((i for i in inner if G.vertices[i].b), None)
        if lc is not None:
            G = local_complement(G, lc)
            continue
        pair = next(((i, j) for i in inner for j in inner if i < j and G.adjacency[i][j]), None)
        if pair is None:
            return G
        G = pivot(G, *pair)


# ---------------------------------------------------------------------------
# Reduced AP-form
# ---------------------------------------------------------------------------


def _fmt_rows(field: Field, rows) -> list:
    return [[field.format(v) for v in r] for r in rows]


@dataclass(frozen=True)
class EmptyForm:
    field: Field
    type: tuple

    @property
    def empty(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"empty": True, "type": list(self.type)}

    def dumps(self, pretty: bool = False) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2 if pretty else None)

    def state(self) -> AffineRelation:
        return AffineRelation.empty_relation(self.field, 0, 2 * sum(self.type))

    def relation(self) -> AffineRelation:
        return unbend(self.state(), self.type[0])

    def to_diagram(self) -> Diagram:
        """A disconnected spider with impossible phase next to plain outputs."""
        f = self.field
        n = sum(self.type)
        verts = {0: Vertex(GREY, (f.one, f.zero))}
        verts.update({i + 1: Vertex(GREY, (f.zero, f.zero)) for i in range(n)})
        edges = [Edge(End.leg(i + 1, OUT), End.output(i)) for i in range(n)]
        return _unbend_diagram(Diagram(f, verts, edges, 0, n), self.type[0])


@dataclass(frozen=True)
class Form:
    field: Field
    type: tuple
    sigma: tuple
    F: tuple
    x: tuple
    S: tuple
    s: tuple

    @property
    def empty(self) -> bool:
        return False

    @property
    def m(self) -> int:
        return len(self.x)

    def to_json(self) -> dict:
        f = self.field
        return {
            "type": list(self.type),
            "sigma": list(self.sigma),
            "F": _fmt_rows(f, self.F),
            "x": [f.format(v) for v in self.x],
            "S": _fmt_rows(f, self.S),
            "s": [f.format(v) for v in self.s],
        }

    def dumps(self, pretty: bool = False) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2 if pretty else None)

    def state(self) -> AffineRelation:
        f = self.field
        n = len(self.sigma)
        m = self.m
        P, N = self.sigma[:m], self.sigma[m:]
        rows, rhs = [], []
        for i, p in enumerate(P):
            r = [f.zero] * (2 * n)
            r[2 * p + 1] = f.one
            for j, q in enumerate(N):
                r[2 * q + 1] = self.F[i][j]
            rows.append(r)
            rhs.append(-self.x[i])
        for j, q in enumerate(N):
            r = [f.zero] * (2 * n)
            r[2 * q] = f.one
            for i, p in enumerate(P):
                r[2 * p] = -self.F[i][j]
            for l, t in enumerate(N):
                yv = self.S[j][l] if j == l else -self.S[j][l]
                r[2 * t + 1] = r[2 * t + 1] - yv
            rows.append(r)
            rhs.append(-self.s[j])
        return AffineRelation(f, 0, 2 * n, rows, rhs)

    def relation(self) -> AffineRelation:
        return unbend(self.state(), self.type[0])

    def to_diagram(self) -> Diagram:
        """The reduced AP-form drawn as a diagram of type ``type``."""
        f = self.field
        n = len(self.sigma)
        m = self.m
        P, N = self.sigma[:m], self.sigma[m:]
        verts = {}
        edges = []
        for k in range(n):
            if k in N:
                j = N.index(k)
                verts[k] = Vertex(GREY, (self.s[j], self.S[j][j]))
            else:
                verts[k] = Vertex(GREY, (f.zero, f.zero))
            edges.append(Edge(End.leg(k, OUT), End.output(k)))
        for j, q in enumerate(N):
            for l in range(j + 1, len(N)):
                if self.S[j][l]:
                    edges.append(Edge(End.leg(q, OUT), End.leg(N[l], IN), self.S[j][l]))
        for i, p in enumerate(P):
            v = n + i
            verts[v] = Vertex(GREY, (self.x[i], f.zero))
            edges.append(Edge(End.leg(v, OUT), End.leg(p, IN), f.one))
            for j, q in enumerate(N):
                if self.F[i][j]:
                    edges.append(Edge(End.leg(v, OUT), End.leg(q, IN), self.F[i][j]))
        return _unbend_diagram(Diagram(f, verts, edges, 0, n), self.type[0])


def to_reduced_ap(G: GraphLikeState, split: tuple[int, int] | None = None) -> Form | EmptyForm:
    """Row-reduce the internal-to-boundary biadjacency and read off the form."""
    if not is_ap_form(G):
        raise NotAPForm("state is not in AP-form")
    f = G.field
    n = G.n_outputs
    split = tuple(split) if split is not None else (0, n)
    if sum(split) != n:
        raise TypeMismatch("split does not match the number of outputs")
    bv = [G.boundary_vertex(k) for k in range(n)]
    inner = G.internal
    rows = [[G.adjacency[i][bv[k]] for k in range(n)] + [G.vertices[i].a] for i in inner]
    pivots = _rref_rows(rows, n + 1, limit=n)
    r = len(pivots)
    if any(row[n] for row in rows[r:]):
        return EmptyForm(f, split)
    rows = rows[:r]
    P = list(pivots)
    N = [k for k in range(n) if k not in P]
    F = [[row[q] for q in N] for row in rows]
    x = [row[n] for row in rows]

    def yh(i, j):
        return G.vertices[bv[i]].b if i == j else -G.adjacency[bv[i]][bv[j]]

    y = [G.vertices[bv[k]].a for k in range(n)]
    A = Matrix(f, [[yh(i, j) for j in P] for i in P], cols=len(P))
    B = Matrix(f, [[yh(i, j) for j in N] for i in P], cols=len(N))
    C = Matrix(f, [[yh(i, j) for j in N] for i in N], cols=len(N))
    Fm = Matrix(f, F, cols=len(N))
    Ft = Fm.T
    Yn = C - B.T @ Fm - Ft @ B + Ft @ A @ Fm
    xv = Matrix(f, [[v] for v in x], cols=1)
    yP = Matrix(f, [[y[k]] for k in P], cols=1)
    yN = Matrix(f, [[y[k]] for k in N], cols=1)
    s_col = yN - Ft @ yP + B.T @ xv - Ft @ A @ xv
    k = len(N)
    S = tuple(tuple(Yn[i, j] if i == j else -Yn[i, j] for j in range(k)) for i in range(k))
    return Form(
        f,
        split,
        tuple(P + N),
        tuple(tuple(r_) for r_ in F),
        tuple(x),
        S,
        tuple(s_col.column(0)) if k else (),
    )


def normal_form(D: Diagram) -> Form | EmptyForm:
    """Reduced AP-form of a discard-free diagram."""
    G, split = to_graph_like(D)
    return to_reduced_ap(to_ap_form(G), split)


def canonical_form(R: AffineRelation, m: int | None = None) -> Form | EmptyForm:
    """Reduced AP-form computed straight from a Lagrangian relation.

    Independent of the rewriting pipeline; used to cross-check it.
    """
    f = R.field
    if R.dom % 2 or R.cod % 2:
        raise TypeMismatch("relation is not between wires")
    mi = R.dom // 2 if m is None else m
    split = (mi, (R.dom + R.cod) // 2 - mi)
    if R.empty:
        return EmptyForm(f, split)
    if classify(R) is not Kind.LAGRANGIAN:
        raise TypeMismatch("canonical_form needs a Lagrangian relation")
    St = bend(R)
    n = St.cod // 2
    from .affrel import project

    Xp = project(St, [2 * k + 1 for k in range(n)])
    rows = [list(r) + [c] for r, c in zip(Xp.rows, Xp.rhs)]
    pivots = []
    for row in rows:
        pivots.append(next(j for j, v in enumerate(row) if v))
    P = pivots
    N = [k for k in range(n) if k not in P]
    F = tuple(tuple(row[q] for q in N) for row in rows)
    x = tuple(-row[n] for row in rows)
    # restrict to z_P = 0; what remains is a graph over X_N
    extra = []
    for p in P:
        r = [f.zero] * (2 * n)
        r[2 * p] = f.one
        extra.append(r)
    cut = AffineRelation(f, 0, 2 * n, list(St.rows) + extra, list(St.rhs) + [f.zero] * len(extra))
    sp = cut.span()
    k = len(N)
    if k:
        Xn = Matrix(f, [[b[2 * q + 1] for b in sp.basis] for q in N], cols=len(sp.basis))
        Zn = Matrix(f, [[b[2 * q] for b in sp.basis] for q in N], cols=len(sp.basis))
        Y = Zn @ inverse(Xn)
        o = sp.offset
        yo = Y.apply([o[2 * q + 1] for q in N])
        s = tuple(yo[j] - o[2 * q] for j, q in enumerate(N))
        S = tuple(tuple(Y[i, j] if i == j else -Y[i, j] for j in range(k)) for i in range(k))
    else:
        s, S = (), ()
    return Form(f, split, tuple(P + N), F, x, S, s)


def decide_equal(D1: Diagram, D2: Diagram) -> bool:
    """Semantic equality of two diagrams of the same type.

    Discard-free diagrams are compared by normal form; with discards the
    coisotropic relations are compared directly.
    """
    if D1.field != D2.field:
        raise FieldMismatch(f"{D1.field.tag} vs {D2.field.tag}")
    if D1.type != D2.type:
        raise TypeMismatch(f"types differ: {D1.type} vs {D2.type}")
    if D1.has_discard or D2.has_discard:
        return rel_equal(interpret(D1), interpret(D2))
    return normal_form(D1) == normal_form(D2)

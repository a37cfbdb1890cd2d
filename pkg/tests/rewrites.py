"""Semantics-preserving rewrites on diagram structure.

Used to produce pairs of diagrams that look different but denote the same
relation.  Each rewrite edits vertices and edges directly rather than going
through the normalizer, so the two sides of a pair share no code path with
the thing under test.
"""

import random

from lagrel import diagram as dg
from lagrel.diagram import DISCARD, GREY, IN, OUT, WHITE, Diagram, Edge, End, Vertex


def _flip(p):
    return OUT if p == IN else IN


def _fresh(verts):
    return max(verts, default=-1) + 1


def _retarget(end, old_vid, old_pol, new_end):
    return new_end if end.kind == "vertex" and end.index == old_vid and end.polarity == old_pol else end


def subdivide(D: Diagram, i: int) -> Diagram:
    """Put a phase-free grey spider in the middle of edge ``i``."""
    f = D.field
    verts = dict(D.vertices)
    edges = list(D.edges)
    e = edges[i]
    w = _fresh(verts)
    verts[w] = Vertex(GREY, (f.zero, f.zero))
    p = e.b.pol
    edges[i] = Edge(e.a, End.leg(w, p), e.box)
    edges.append(Edge(End.leg(w, _flip(p)), e.b))
    return Diagram(f, verts, edges, D.n_in, D.n_out)


def splice(D: Diagram, i: int, P: Diagram) -> Diagram:
    """Insert the 1 -> 1 diagram ``P`` (denoting the identity) into plain edge ``i``."""
    e = D.edges[i]
    if e.box is not None or e.a.pol == e.b.pol:
        D = subdivide(D, i)
        i = len(D.edges) - 1
        e = D.edges[i]
    src, dst = (e.a, e.b) if e.a.pol == OUT else (e.b, e.a)
    P = P.renumbered(_fresh(D.vertices))
    verts = dict(D.vertices)
    verts.update(P.vertices)

    def re(end):
        if end.kind == "input":
            return src
        if end.kind == "output":
            return dst
        return end

    edges = [x for j, x in enumerate(D.edges) if j != i]
    edges += [Edge(re(x.a), re(x.b), x.box) for x in P.edges]
    return Diagram(D.field, verts, edges, D.n_in, D.n_out)


def split_spider(D: Diagram, v: int, rng: random.Random) -> Diagram:
    """Unfuse a spider into two of the same colour, sharing its phase and legs."""
    f = D.field
    kind = D.vertices[v].kind
    a, b = D.vertices[v].phase
    a1, b1 = f.random(rng), f.random(rng)
    verts = dict(D.vertices)
    u = _fresh(verts)
    verts[v] = Vertex(kind, (a - a1, b - b1))
    verts[u] = Vertex(kind, (a1, b1))
    edges = []
    for e in D.edges:
        ends = []
        for end in (e.a, e.b):
            if end.kind == "vertex" and end.index == v and rng.random() < 0.5:
                end = End.leg(u, end.polarity)
            ends.append(end)
        edges.append(Edge(ends[0], ends[1], e.box))
    if kind == GREY:
        edges.append(Edge(End.leg(v, OUT), End.leg(u, IN)))
    else:
        # white spiders fuse through an antipode
        t = u + 1
        verts[t] = Vertex(WHITE, (f.zero, f.zero))
        edges.append(Edge(End.leg(v, OUT), End.leg(t, IN)))
        edges.append(Edge(End.leg(t, OUT), End.leg(u, IN)))
    return Diagram(f, verts, edges, D.n_in, D.n_out)


def recolour(D: Diagram, v: int) -> Diagram:
    """Turn a white spider grey, with a Fourier box on every leg."""
    f = D.field
    a, b = D.vertices[v].phase
    verts = dict(D.vertices)
    verts[v] = Vertex(GREY, (-a, b))
    edges = []
    extra = []
    for e in D.edges:
        ends = []
        for end in (e.a, e.b):
            if end.kind == "vertex" and end.index == v:
                h = _fresh(verts)
                verts[h] = Vertex(GREY, (f.zero, f.zero))
                p = end.polarity
                extra.append(Edge(End.leg(v, p), End.leg(h, p), f.one))
                end = End.leg(h, _flip(p))
            ends.append(end)
        edges.append(Edge(ends[0], ends[1], e.box))
    return Diagram(f, verts, edges + extra, D.n_in, D.n_out)


def flip_leg(D: Diagram, i: int, side: int) -> Diagram:
    """Reverse the polarity of one spider leg; legitimate because spiders are flexsymmetric."""
    e = D.edges[i]
    end = (e.a, e.b)[side]
    ne = End.leg(end.index, _flip(end.polarity))
    edges = list(D.edges)
    edges[i] = Edge(ne, e.b, e.box) if side == 0 else Edge(e.a, ne, e.box)
    return Diagram(D.field, D.vertices, edges, D.n_in, D.n_out)


def shuffle(D: Diagram, rng: random.Random) -> Diagram:
    """Rename vertices and reorder edges; plain edges may also be read backwards."""
    ids = list(D.vertices)
    new = ids[:]
    rng.shuffle(new)
    mapping = dict(zip(ids, new))

    def re(end):
        return End.leg(mapping[end.index], end.polarity) if end.kind == "vertex" else end

    edges = []
    for e in D.edges:
        a, b = re(e.a), re(e.b)
        if e.box is None and rng.random() < 0.5:
            a, b = b, a
        edges.append(Edge(a, b, e.box))
    rng.shuffle(edges)
    return Diagram(D.field, {mapping[k]: x for k, x in D.vertices.items()}, edges, D.n_in, D.n_out)


def identity_gadget(f, rng: random.Random) -> Diagram:
    """A random 1 -> 1 diagram equal to the identity."""
    c = f.random(rng, nonzero=True)
    a, b = f.random(rng), f.random(rng)
    choice = rng.randrange(6)
    if choice == 0:
        return dg.compose(dg.box(f, c), dg.box(f, -c))
    if choice == 1:
        return dg.compose(dg.grey(f, a, b), dg.grey(f, -a, -b))
    if choice == 2:
        return dg.compose(dg.white(f, a, b), dg.white(f, a, -b))
    if choice == 3:
        anti = dg.white(f, 0, 0)
        return dg.compose(anti, anti)
    if choice == 4:
        # the snake: a cup next to the wire, then a cap
        return dg.compose(dg.tensor(dg.identity(f, 1), dg.cup(f)), dg.tensor(dg.cap(f), dg.identity(f, 1)))
    # multiplying by t and then by 1/t
    m = lambda t: dg.compose(dg.box(f, t), dg.box(f, -f.one))  # noqa: E731
    return dg.compose(m(c), m(f.one / c))


def random_rewrite(D: Diagram, rng: random.Random) -> Diagram:
    f = D.field
    spiders = [k for k, v in D.vertices.items() if v.kind != DISCARD]
    whites = [k for k in spiders if D.vertices[k].kind == WHITE]
    legs = [(i, s) for i, e in enumerate(D.edges) for s, end in enumerate((e.a, e.b))
            if end.kind == "vertex" and D.vertices[end.index].kind != DISCARD]
    options = ["shuffle"]
    if D.edges:
        options += ["subdivide", "splice"]
    if spiders:
        options.append("split")
    if whites:
        options.append("recolour")
    if legs:
        options.append("flip")
    op = rng.choice(options)
    if op == "subdivide":
        return subdivide(D, rng.randrange(len(D.edges)))
    if op == "splice":
        return splice(D, rng.randrange(len(D.edges)), identity_gadget(f, rng))
    if op == "split":
        return split_spider(D, rng.choice(spiders), rng)
    if op == "recolour":
        return recolour(D, rng.choice(whites))
    if op == "flip":
        return flip_leg(D, *rng.choice(legs))
    return shuffle(D, rng)


def rewrite(D: Diagram, rng: random.Random, steps: int = 4) -> Diagram:
    for _ in range(steps):
        D = random_rewrite(D, rng)
    return D

"""Brute-force evaluation of diagrams over a finite field.

Independent of :func:`lagrel.diagram.interpret`: every generator is turned
into the explicit set of leg values satisfying its defining predicate, and the
sets are joined over shared wires by plain enumeration.  Nothing here solves a
linear system, so agreement with the exact interpreter is a real check.
"""

from __future__ import annotations

import itertools

from .affrel import AffineRelation
from .diagram import GREY, IN, Diagram
from .errors import BudgetExceeded

__all__ = ["diagram_points", "brute_force_diagram", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 2_000_000


class _Counter:
    def __init__(self, budget: int):
        self.left = budget

    def spend(self, n: int):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("brute-force enumeration exceeded its budget")


def _factor_vertex(field, elems, v, legs_pol, cnt):
    """All leg assignments (z0, x0, z1, x1, ...) allowed by one vertex."""
    k = len(legs_pol)
    out = []
    if v.kind == "discard":
        cnt.spend(len(elems) ** (2 * k))
        return [p for p in itertools.product(elems, repeat=2 * k)]
    a, b = v.phase
    # the spider has one extra hidden variable (shared x or shared z)
    cnt.spend(len(elems) ** (2 * k + 1))
    for hidden in elems:
        for p in itertools.product(elems, repeat=2 * k):
            zs, xs = p[0::2], p[1::2]
            if v.kind == GREY:
                if any(x != hidden for x in xs):
                    continue
                s = field.zero
                for pol, z in zip(legs_pol, zs):
                    s = s + z if pol == IN else s - z
                if s + b * hidden == a:
                    out.append(p)
            else:
                if any(z != (hidden if pol == IN else -hidden) for pol, z in zip(legs_pol, zs)):
                    continue
                s = field.zero
                for x in xs:
                    s = s + x
                if s - b * hidden == a:
                    out.append(p)
    return sorted(set(out), key=_key)


def _key(p):
    return [int(v) for v in p]


def _factor_edge(field, elems, e, cnt):
    """Allowed (z_a, x_a, z_b, x_b) for one edge."""
    out = []
    cnt.spend(len(elems) ** 4)
    bend = e.a.pol == e.b.pol
    for za, xa, zb, xb in itertools.product(elems, repeat=4):
        if e.box is None:
            if (zb == (-za if bend else za)) and xb == xa:
                out.append((za, xa, zb, xb))
            continue
        # box tips: the input tip meets end a, the output tip meets end b
        zi, xi = (-za, xa) if e.a.pol == IN else (za, xa)
        zo, xo = (-zb, xb) if e.b.pol != IN else (zb, xb)
        c = e.box
        if c:
            ok = zo == -c * xi and c * xo == zi
        else:
            ok = zi == 0 and zo == 0
        if ok:
            out.append((za, xa, zb, xb))
    return out


def diagram_points(D: Diagram, budget: int = DEFAULT_BUDGET) -> frozenset:
    """Every boundary point of ``D``: inputs' ``(z, x)`` pairs followed by outputs'."""
    f = D.field
    if not f.finite:
        raise TypeError("brute-force evaluation needs a finite field")
    elems = list(f.elements())
    cnt = _Counter(budget)
    # one variable per coordinate of every edge end
    var = {}
    for i, e in enumerate(D.edges):
        for s in (0, 1):
            var[(i, s)] = (len(var) * 2, len(var) * 2 + 1)
    factors = []  # (vars, rows)
    for vid, v in D.vertices.items():
        legs = D.legs(vid)
        pols = [(D.edges[i].a, D.edges[i].b)[s].polarity for i, s in legs]
        vs = tuple(c for i, s in legs for c in var[(i, s)])
        factors.append((vs, _factor_vertex(f, elems, v, pols, cnt)))
    for i, e in enumerate(D.edges):
        factors.append((var[(i, 0)] + var[(i, 1)], _factor_edge(f, elems, e, cnt)))
    ports = [None] * (D.n_in + D.n_out)
    for i, e in enumerate(D.edges):
        for s, end in enumerate((e.a, e.b)):
            if end.kind == "input":
                ports[end.index] = var[(i, s)]
            elif end.kind == "output":
                ports[D.n_in + end.index] = var[(i, s)]
    keep = [c for p in ports for c in p]
    return _solve(factors, keep, cnt)


def _join(f1, f2, cnt):
    v1, r1 = f1
    v2, r2 = f2
    shared = [v for v in v1 if v in v2]
    i1 = [v1.index(v) for v in shared]
    i2 = [v2.index(v) for v in shared]
    extra = [j for j, v in enumerate(v2) if v not in v1]
    index = {}
    for row in r2:
        index.setdefault(tuple(row[j] for j in i2), []).append(row)
    out = []
    for row in r1:
        for other in index.get(tuple(row[j] for j in i1), ()):
            out.append(tuple(row) + tuple(other[j] for j in extra))
    cnt.spend(len(out) + len(r1))
    return tuple(v1) + tuple(v2[j] for j in extra), out


def _project(fct, needed, cnt):
    vs, rows = fct
    idx = [j for j, v in enumerate(vs) if v in needed]
    new = sorted({tuple(r[j] for j in idx) for r in rows}, key=_key)
    cnt.spend(len(rows))
    return tuple(vs[j] for j in idx), new


def _solve(factors, keep, cnt) -> frozenset:
    factors = list(factors)
    keep_set = set(keep)
    while len(factors) > 1:
        # join the pair sharing the most variables, smallest first
        best = None
        for i in range(len(factors)):
            for j in range(i + 1, len(factors)):
                sh = len(set(factors[i][0]) & set(factors[j][0]))
                if not sh:
                    continue
                size = len(factors[i][1]) * len(factors[j][1])
                cand = (-sh, size, i, j)
                if best is None or cand < best:
                    best = cand
        if best is None:
            i, j = 0, 1
        else:
            i, j = best[2], best[3]
        joined = _join(factors[i], factors[j], cnt)
        rest = [g for t, g in enumerate(factors) if t not in (i, j)]
        needed = set(keep_set)
        for g in rest:
            needed.update(g[0])
        joined = _project(joined, needed, cnt)
        factors = rest + [joined]
        if not joined[1]:
            return frozenset()
    if not factors:
        return frozenset({()})
    vs, rows = factors[0]
    pos = [vs.index(v) for v in keep]
    return frozenset(tuple(r[j] for j in pos) for r in rows)


def brute_force_diagram(D: Diagram, budget: int = DEFAULT_BUDGET) -> tuple[AffineRelation, frozenset]:
    """Affine hull and point set of ``D`` by enumeration."""
    pts = diagram_points(D, budget)
    hull = AffineRelation.from_points(D.field, 2 * D.n_in, 2 * D.n_out, sorted(pts, key=_key))
    return hull, pts

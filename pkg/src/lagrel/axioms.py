"""Equations of the graphical calculus, as randomized semantic checks.

Each :class:`Equation` draws random parameters and returns a pair of diagrams
that must denote the same relation.  Groups:

``affine``   the defining equations of the affine calculus,
``linear``   the same equations with every affine phase set to zero,
``lemma``    derived equations (box products, Hopf, copy variants, ...),
``discard``  discarding the generating isometries.

Conventions worth remembering: the phase-free white ``1 -> 1`` spider is the
antipode ``(z, x) -> (-z, -x)``, whites fuse through an antipode, and the
colour change uses the box labelled 1.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass
from typing import Callable

from . import diagram as dg
from .affrel import equal
from .diagram import Diagram
from .fields import Field

__all__ = ["Equation", "EQUATIONS", "equations", "check", "run_suite"]

Builder = Callable[[Field, _random.Random, bool], tuple[Diagram, Diagram]]


@dataclass(frozen=True)
class Equation:
    name: str
    groups: tuple
    build: Builder

    def instance(self, field: Field, rng: _random.Random, linear: bool = False) -> tuple[Diagram, Diagram]:
        return self.build(field, rng, linear)


def _ph(f, rng, linear):
    """Random (affine, symplectic) phase; affine part 0 in the linear fragment."""
    a = f.zero if linear else f.random(rng)
    return a, f.random(rng)


def _nz(f, rng):
    return f.random(rng, nonzero=True)


def _ar(rng, lo=0, hi=3):
    return rng.randint(lo, hi)


def _tens(f, ds):
    return dg.tensor_all(f, *ds)


def _antipode(f):
    return dg.white(f, 0, 0)


# -- defining equations --------------------------------------------------------


def _fusion_grey(f, rng, lin):
    (a, b), (c, d) = _ph(f, rng, lin), _ph(f, rng, lin)
    m, n, k = _ar(rng), _ar(rng), _ar(rng, 1, 2)
    lhs = dg.compose(dg.grey(f, a, b, m, k), dg.grey(f, c, d, k, n))
    return lhs, dg.grey(f, a + c, b + d, m, n)


def _fusion_white(f, rng, lin):
    (a, b), (c, d) = _ph(f, rng, lin), _ph(f, rng, lin)
    m, n = _ar(rng), _ar(rng)
    lhs = dg.compose_all(dg.white(f, a, b, m, 1), _antipode(f), dg.white(f, c, d, 1, n))
    return lhs, dg.white(f, a + c, b + d, m, n)


def _identity(f, rng, lin):
    if rng.random() < 0.5:
        return dg.grey(f, 0, 0), dg.identity(f)
    return dg.compose(_antipode(f), _antipode(f)), dg.identity(f)


def _colour(f, rng, lin):
    a, b = _ph(f, rng, lin)
    m, n = _ar(rng), _ar(rng)
    one = dg.box(f, 1)
    lhs = dg.white(f, a, b, m, n)
    rhs = dg.compose_all(_tens(f, [one] * m), dg.grey(f, -a, b, m, n), _tens(f, [one] * n))
    return lhs, rhs


def _box_inverse(f, rng, lin):
    z = _nz(f, rng)
    return dg.compose(dg.box(f, z), dg.box(f, -z)), dg.identity(f)


def _plus(f, rng, lin):
    c, d = f.random(rng), f.random(rng)
    lhs = dg.compose_all(dg.grey(f, 0, 0, 1, 2), _tens(f, [dg.box(f, c), dg.box(f, d)]), dg.grey(f, 0, 0, 2, 1))
    return lhs, dg.box(f, c + d)


def _times(f, rng, lin):
    a, b = _nz(f, rng), _nz(f, rng)

    def scale(t):
        return dg.compose(dg.box(f, t), dg.box(f, -1))

    return dg.compose(scale(a), scale(b)), scale(a * b)


def _one(f, rng, lin):
    a = f.zero if lin else f.random(rng)
    z = _nz(f, rng)
    return dg.grey(f, a, z, 0, 0), dg.empty_diagram(f)


def _zero(f, rng, lin):
    a = _nz(f, rng)
    m, n = _ar(rng, 0, 2), _ar(rng, 0, 2)
    p, q = _ph(f, rng, False), _ph(f, rng, False)
    lhs = dg.tensor(dg.grey(f, a, 0, 0, 0), dg.grey(f, *p, m, n))
    rhs = dg.tensor(dg.grey(f, a, 0, 0, 0), dg.white(f, *q, m, n))
    return lhs, rhs


def _copy(f, rng, lin):
    a = f.zero if lin else f.random(rng)
    n = _ar(rng)
    lhs = dg.compose(dg.white(f, a, 0, 0, 1), dg.grey(f, 0, 0, 1, n))
    return lhs, _tens(f, [dg.white(f, a, 0, 0, 1)] * n)


def _bigebra(f, rng, lin):
    mid = _tens(f, [dg.identity(f), dg.swap(f), dg.identity(f)])
    wc, gm = dg.white(f, 0, 0, 1, 2), dg.grey(f, 0, 0, 2, 1)
    lhs = dg.compose_all(_tens(f, [wc, wc]), mid, _tens(f, [gm, gm]))
    return lhs, dg.compose(gm, wc)


# -- derived lemmas ------------------------------------------------------------


def _box_product(f, rng, lin):
    z = _nz(f, rng)
    return dg.compose(dg.box(f, z), dg.box(f, z)), _antipode(f)


def _box_antipode(f, rng, lin):
    z = f.random(rng)
    return dg.compose(dg.box(f, z), _antipode(f)), dg.compose(_antipode(f), dg.box(f, z))


def _box_opposite_inverse(f, rng, lin):
    z = _nz(f, rng)
    return dg.box(f, -1 / z), dg.compose_all(dg.box(f, 1), dg.box(f, z), dg.box(f, 1))


def _colour_inverted(f, rng, lin):
    a, b = _ph(f, rng, lin)
    m, n = _ar(rng), _ar(rng)
    inv = dg.box(f, -1)
    rhs = dg.compose_all(_tens(f, [inv] * m), dg.white(f, -a, b, m, n), _tens(f, [inv] * n))
    return dg.grey(f, a, b, m, n), rhs


def _antipode_spider(f, rng, lin):
    a, b = _ph(f, rng, lin)
    m, n = _ar(rng), _ar(rng)
    kind = rng.choice([dg.grey, dg.white])
    anti = _antipode(f)
    lhs = dg.compose_all(_tens(f, [anti] * m), kind(f, a, b, m, n), _tens(f, [anti] * n))
    return lhs, kind(f, -a, b, m, n)


def _box_zero(f, rng, lin):
    return dg.box(f, 0), dg.tensor(dg.grey(f, 0, 0, 1, 0), dg.grey(f, 0, 0, 0, 1))


def _copy_swapped(f, rng, lin):
    a = f.zero if lin else f.random(rng)
    n = _ar(rng)
    lhs = dg.compose(dg.grey(f, a, 0, 0, 1), dg.white(f, 0, 0, 1, n))
    return lhs, _tens(f, [dg.grey(f, -a, 0, 0, 1)] * n)


def _hopf(f, rng, lin):
    lhs = dg.compose_all(
        dg.grey(f, 0, 0, 1, 2), dg.tensor(dg.identity(f), _antipode(f)), dg.white(f, 0, 0, 2, 1)
    )
    return lhs, dg.tensor(dg.grey(f, 0, 0, 1, 0), dg.white(f, 0, 0, 0, 1))


def _push_pauli_state(f, rng, lin):
    a = f.zero if lin else _nz(f, rng)
    c, d = _ph(f, rng, lin)
    if rng.random() < 0.5:
        return dg.compose(dg.white(f, a, 0, 0, 1), dg.grey(f, c, d)), dg.white(f, a, 0, 0, 1)
    return dg.compose(dg.grey(f, a, 0, 0, 1), dg.white(f, c, d)), dg.grey(f, -a, 0, 0, 1)


def _phase_inverses(f, rng, lin):
    a, b = _ph(f, rng, lin)
    if rng.random() < 0.5:
        return dg.compose(dg.grey(f, a, b), dg.grey(f, -a, -b)), dg.identity(f)
    return dg.compose(dg.white(f, a, b), dg.white(f, a, -b)), dg.identity(f)


def _box_swapped(f, rng, lin):
    """Four forms of the box rule; the first two also hold for label 0."""
    which = rng.randrange(4)
    z = f.random(rng) if which < 2 else _nz(f, rng)
    if which == 0:
        # the box read right to left, bent with a cup and a cap
        bent = dg.compose_all(
            dg.tensor(dg.cup(f), dg.identity(f)),
            _tens(f, [dg.identity(f), dg.box(f, z), dg.identity(f)]),
            dg.tensor(dg.identity(f), dg.cap(f)),
        )
        return bent, dg.box(f, z)
    if which == 1:
        return dg.compose(dg.box(f, -z), _antipode(f)), dg.box(f, z)
    if which == 2:
        return dg.compose(dg.box(f, z), dg.box(f, -z)), dg.identity(f)
    return dg.compose(dg.box(f, -z), dg.box(f, z)), dg.identity(f)


def _symplectic_states(f, rng, lin):
    a = f.zero if lin else f.random(rng)
    b = _nz(f, rng)
    return dg.grey(f, a, b, 0, 1), dg.white(f, a / b, -1 / b, 0, 1)


def _box_loop(f, rng, lin):
    a, b = _ph(f, rng, lin)
    c = f.random(rng)
    # a grey spider whose two extra legs are joined through a box
    m, n = _ar(rng, 0, 2), _ar(rng, 0, 2)
    lhs = dg.compose(dg.grey(f, a, b, m, n + 2), _tens(f, [dg.identity(f, n), dg.box(f, c), dg.identity(f)]))
    lhs = dg.compose(lhs, dg.tensor(dg.identity(f, n), dg.cap(f)))
    return lhs, dg.grey(f, a, b - 2 * c, m, n)


# -- discarding isometries -------------------------------------------------------


def _discard_spider(f, rng, lin):
    a, b = _ph(f, rng, lin)
    n = _ar(rng, 1, 3)
    kind = rng.choice([dg.grey, dg.white])
    lhs = dg.compose(kind(f, a, b, 1, n), _tens(f, [dg.discard(f)] * n))
    return lhs, dg.discard(f)


def _discard_box(f, rng, lin):
    z = _nz(f, rng)
    return dg.compose(dg.box(f, z), dg.discard(f)), dg.discard(f)


EQUATIONS: tuple[Equation, ...] = (
    Equation("fusion-grey", ("affine", "linear"), _fusion_grey),
    Equation("fusion-white", ("affine", "linear"), _fusion_white),
    Equation("id", ("affine", "linear"), _identity),
    Equation("colour", ("affine", "linear"), _colour),
    Equation("box", ("affine", "linear"), _box_inverse),
    Equation("plus", ("affine", "linear"), _plus),
    Equation("times", ("affine", "linear"), _times),
    Equation("one", ("affine", "linear"), _one),
    Equation("zero", ("affine",), _zero),
    Equation("copy", ("affine", "linear"), _copy),
    Equation("bigebra", ("affine", "linear"), _bigebra),
    Equation("box-product", ("lemma",), _box_product),
    Equation("box-antipode", ("lemma",), _box_antipode),
    Equation("box-opposite-inverse", ("lemma",), _box_opposite_inverse),
    Equation("colour-inverted", ("lemma",), _colour_inverted),
    Equation("antipode-spider", ("lemma",), _antipode_spider),
    Equation("box-zero-cut", ("lemma",), _box_zero),
    Equation("copy-swapped", ("lemma",), _copy_swapped),
    Equation("hopf", ("lemma",), _hopf),
    Equation("push-pauli-state", ("lemma",), _push_pauli_state),
    Equation("phase-inverses", ("lemma",), _phase_inverses),
    Equation("box-swapped", ("lemma",), _box_swapped),
    Equation("symplectic-states", ("lemma",), _symplectic_states),
    Equation("box-loop", ("lemma",), _box_loop),
    Equation("discard-spider", ("discard",), _discard_spider),
    Equation("discard-box", ("discard",), _discard_box),
)


def equations(group: str) -> list[Equation]:
    return [e for e in EQUATIONS if group in e.groups]


def check(eq: Equation, field: Field, rng: _random.Random, linear: bool = False) -> bool:
    lhs, rhs = eq.instance(field, rng, linear)
    return equal(dg.interpret(lhs), dg.interpret(rhs))


def run_suite(field: Field, samples: int = 20, seed: int = 0, groups=("affine", "linear", "lemma", "discard")) -> dict:
    """``{group/name: [passes, samples]}`` over ``samples`` random instances each."""
    out = {}
    for g in groups:
        for eq in equations(g):
            rng = _random.Random(f"{seed}/{g}/{eq.name}/{field.tag}")
            ok = sum(check(eq, field, rng, linear=(g == "linear")) for _ in range(samples))
            out[f"{g}/{eq.name}"] = [ok, samples]
    return out

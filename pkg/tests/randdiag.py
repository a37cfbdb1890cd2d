"""Random diagram generation shared by the test modules."""

import random

from lagrel import diagram as dg


def random_generator(rng: random.Random, field, allow_discard=False):
    kinds = ["grey", "white", "box", "cup", "cap", "swap", "id"]
    if allow_discard:
        kinds.append("discard")
    k = rng.choice(kinds)
    if k in ("grey", "white"):
        m, n = rng.randint(0, 2), rng.randint(0, 2)
        return dg.make_generator(field, k, (field.random(rng), field.random(rng)), m, n)
    if k == "box":
        return dg.box(field, field.random(rng))
    if k == "cup":
        return dg.cup(field)
    if k == "cap":
        return dg.cap(field)
    if k == "swap":
        return dg.swap(field)
    if k == "discard":
        return dg.discard(field)
    return dg.identity(field, 1)


def random_diagram(rng: random.Random, field, m: int, n: int, size: int = 6, allow_discard=False):
    """A random diagram m -> n built by stacking random layers on a register."""
    D = dg.identity(field, m)
    width = m
    for _ in range(size):
        g = random_generator(rng, field, allow_discard)
        if g.n_in > width:
            continue
        pos = rng.randint(0, width - g.n_in)
        left = dg.identity(field, pos)
        right = dg.identity(field, width - pos - g.n_in)
        layer = dg.tensor(dg.tensor(left, g), right)
        D = dg.compose(D, layer)
        width = layer.n_out
    while width > n:
        keep = max(0, width - 2)
        g = dg.cap(field) if width - n >= 2 else (dg.discard(field) if allow_discard else dg.grey(field, field.random(rng), field.random(rng), 1, 0))
        D = dg.compose(D, dg.tensor(dg.identity(field, width - g.n_in), g))
        width = width - g.n_in
    while width < n:
        g = dg.white(field, field.random(rng), field.random(rng), 0, 1)
        D = dg.compose(D, dg.tensor(dg.identity(field, width), g))
        width += 1
    return D

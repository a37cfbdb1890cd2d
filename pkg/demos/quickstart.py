"""A first tour: build diagrams, read off their relations, compare them."""

# %%
from lagrel import diagram as dg
from lagrel.fields import Q, prime_field
from lagrel.normalize import decide_equal, normal_form
from lagrel.symplectic import classify

F5 = prime_field(5)

# %% [markdown]
# A grey spider with phase (a, b) shares one x across its legs and balances
# the z's.  As a 1 -> 1 map over F_5 it is a shear plus a shift.

# %%
g = dg.grey(F5, 2, 3)
R = dg.interpret(g)
print(R)
print("kind:", classify(R).value)
print(sorted(tuple(int(v) for v in p) for p in R.points())[:5], "...")

# %% [markdown]
# Spiders of the same colour fuse, adding their phases.

# %%
lhs = dg.compose(dg.grey(F5, 2, 3), dg.grey(F5, 1, 1))
print(decide_equal(lhs, dg.grey(F5, 3, 4)))

# %% [markdown]
# The box labelled c is (z, x) -> (-c x, z / c).  Four Fourier boxes are the
# identity, two of them are the antipode.

# %%
four = dg.compose(dg.compose(dg.box(Q, 1), dg.box(Q, 1)), dg.compose(dg.box(Q, 1), dg.box(Q, 1)))
print(decide_equal(four, dg.identity(Q)))
print(decide_equal(dg.compose(dg.box(Q, 1), dg.box(Q, 1)), dg.white(Q, 0, 0)))

# %% [markdown]
# Closed diagrams are scalars: the one-point relation or the empty one.
# A grey state fixes z = -1 and a grey effect demands z = 0, so joining them is
# a contradiction.

# %%
print(dg.scalar_value(dg.compose(dg.cup(Q), dg.cap(Q))))
print(dg.scalar_value(dg.compose(dg.grey(Q, 1, 0, 0, 1), dg.grey(Q, 0, 0, 1, 0))))

# %% [markdown]
# Diagrams serialise to JSON and back without loss.

# %%
text = g.dumps()
print(text)
print(dg.Diagram.loads(text) == g)
print(normal_form(g).dumps())

"""Qudit stabiliser circuits, compared and simplified as diagrams."""

# %%
from lagrel import diagram as dg
from lagrel.fields import prime_field
from lagrel.frontends import stabiliser as st
from lagrel.frontends.stabiliser import StabCircuit
from lagrel.normalize import normal_form

# %% [markdown]
# Over F_5 the Fourier gate has order four and CX has order five.

# %%
print(st.stab_equal(StabCircuit(5, 1, [st.Fourier(0)] * 4), StabCircuit(5, 1)))
print(st.stab_equal(StabCircuit(5, 2, [st.CX(0, 1)] * 5), StabCircuit(5, 2)))
print(st.stab_equal(StabCircuit(5, 1, [st.Fourier(0)] * 2), StabCircuit(5, 1)))

# %% [markdown]
# CX acts on phase-space points by adding control x into the target and target
# z back into the control.

# %%
R = dg.interpret(st.stab_to_diagram(StabCircuit(3, 2, [st.CX(0, 1)])))
print(R)

# %% [markdown]
# Preparing |0>, applying X and postselecting on 0 never succeeds.  A Z in the
# same place is harmless.

# %%
bad = StabCircuit(3, 1, [st.PrepZero(0), st.PauliX(0, 1), st.PostselectZero(0)])
ok = StabCircuit(3, 1, [st.PrepZero(0), st.PauliZ(0, 1), st.PostselectZero(0)])
print(st.stab_possible(bad), st.stab_possible(ok))

# %% [markdown]
# Graph states normalise to their own adjacency matrix.

# %%
G = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
nf = normal_form(st.graph_state(G, prime_field(3)))
print(nf.dumps())

# %% [markdown]
# For p = 2 the same calculus describes the Spekkens toy model, not qubits, so
# the flag must be explicit.

# %%
toy = StabCircuit(2, 2, [st.CX(0, 1), st.Fourier(1)], toy=True)
print(toy.label)
print(toy.dumps())

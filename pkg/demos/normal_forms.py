"""Graph-like states, local complementation, pivoting and the reduced form."""

# %%
from lagrel import diagram as dg
from lagrel.fields import prime_field
from lagrel.normalize import (
    GraphLikeState,
    GVertex,
    decide_equal,
    local_complement,
    normal_form,
    pivot,
    to_ap_form,
    to_graph_like,
)

F3 = prime_field(3)

# %% [markdown]
# A star: one internal vertex with symplectic phase 1 joined to three boundary
# vertices.  Local complementation removes the centre and leaves a triangle of
# weight-1 edges, each boundary vertex picking up symplectic phase 2.

# %%
zero = F3.zero
verts = [GVertex(zero, zero, k) for k in range(3)] + [GVertex(zero, F3(1))]
adj = [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]]
star = GraphLikeState(F3, 3, verts, adj)
after = local_complement(star, 3)
print([(int(v.a), int(v.b)) for v in after.vertices])
print([[int(w) for w in r] for r in after.adjacency])
print("same relation:", after.relation() == star.relation())

# %% [markdown]
# Two adjacent internal vertices with zero symplectic phase go together by a pivot.

# %%
verts = [GVertex(zero, zero, 0), GVertex(zero, zero, 1), GVertex(F3(1), zero), GVertex(F3(2), zero)]
adj = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 2], [0, 1, 2, 0]]
pair = GraphLikeState(F3, 2, verts, adj)
after = pivot(pair, 2, 3)
print([(int(v.a), int(v.b)) for v in after.vertices])
print("same relation:", after.relation() == pair.relation())

# %% [markdown]
# An arbitrary diagram first becomes a graph-like state.  Internal vertices are
# then removed until every one left sits in AP-form.

# %%
D = dg.compose(dg.grey(F3, 1, 2, 1, 2), dg.tensor(dg.box(F3, 2), dg.white(F3, 1, 0)))
G, split = to_graph_like(D)
print("graph-like:", len(G.vertices), "vertices,", len(G.internal), "internal")
H = to_ap_form(G)
print("AP-form:", len(H.vertices), "vertices,", len(H.internal), "internal")
print(H.relation() == G.relation())

# %% [markdown]
# The reduced form is canonical: diagrams that denote the same relation print
# the same JSON, however they were drawn.  Here a white spider (behind its
# antipode) is recoloured grey between two boxes.

# %%
a = dg.compose(dg.white(F3, 1, 1), dg.white(F3, 0, 0))
b = dg.compose(dg.box(F3, 1), dg.compose(dg.grey(F3, 2, 1), dg.box(F3, 2)))
print(normal_form(a).dumps())
print(normal_form(b).dumps())
print(decide_equal(a, b))

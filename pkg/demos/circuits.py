"""Linear electrical networks as relations between port currents and potentials."""

# %%
from lagrel import diagram as dg
from lagrel.frontends.electrical import impedance_matrix, impedance_of, netlist_to_diagram, parse_netlist
from lagrel.normalize import decide_equal

def show(Z):
    return [[Z.field.format(v) for v in row] for row in Z]


# %% [markdown]
# Resistors in series add.  Wiring p to q through 2 then 3 behaves exactly like
# a single 5, and the decision is made on the diagrams themselves.

# %%
def two_port(body):
    return netlist_to_diagram(parse_netlist(body + "\nPORT p p\nPORT q q"))


print(decide_equal(two_port("R a p m 2\nR b m q 3"), two_port("R a p q 5")))
print(decide_equal(two_port("R a p q 2\nR b p q 3"), two_port("R a p q 6/5")))

# %% [markdown]
# A T-network to ground.  Its impedance matrix has the shared arm on the
# off-diagonal.

# %%
tee = parse_netlist(
    """
    R a n1 m 2
    R b n2 m 3
    R c m g 5
    GROUND g
    PORT p n1
    PORT q n2
    """
)
Z = impedance_matrix(tee)
print(show(Z))

# %% [markdown]
# Two ideal voltage sources of different strength in parallel cannot both hold.
# The diagram denotes the empty relation.

# %%
clash = netlist_to_diagram(parse_netlist("V a x y 1\nV b x y 2"))
print(dg.scalar_value(clash))

# %% [markdown]
# Inductors and capacitors work over Q(s).  An LC tank seen from one port.

# %%
tank = parse_netlist("L a n g 2\nC b n g 1/3\nGROUND g\nPORT p n")
# 2s in parallel with 3/s
print(tank.field.tag, show(impedance_matrix(tank)))

# %% [markdown]
# A current source leaves an offset, so there is no impedance matrix to report.

# %%
src = netlist_to_diagram(parse_netlist("I a p g 2\nR b p g 3\nGROUND g\nPORT p p"))
print(impedance_of(dg.interpret(src)))

"""Builders that compile domain descriptions into diagrams."""

from .stabiliser import Gate, StabCircuit, graph_state, stab_equal, stab_possible, stab_to_diagram
from .electrical import Netlist, impedance_diagram, impedance_matrix, netlist_to_diagram, parse_netlist

__all__ = [
    "Gate",
    "StabCircuit",
    "graph_state",
    "stab_equal",
    "stab_possible",
    "stab_to_diagram",
    "Netlist",
    "impedance_diagram",
    "impedance_matrix",
    "netlist_to_diagram",
    "parse_netlist",
]

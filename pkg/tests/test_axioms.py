import random

import pytest

from lagrel import axioms
from lagrel import diagram as dg
from lagrel.affrel import equal
from lagrel.axioms import EQUATIONS, Equation, check, equations, run_suite
from lagrel.fields import QS, Q, prime_field


@pytest.mark.parametrize("f", [prime_field(2), prime_field(3), prime_field(7), Q])
def test_suite_passes(f):
    res = run_suite(f, samples=8, seed=3)
    assert res and all(ok == n for ok, n in res.values()), {k: v for k, v in res.items() if v[0] != v[1]}


def test_suite_over_rational_functions():
    res = run_suite(QS, samples=2, seed=1, groups=("affine",))
    assert all(ok == n for ok, n in res.values())


def test_groups_partition_names():
    names = [e.name for e in EQUATIONS]
    assert len(names) == len(set(names))
    assert {e.name for e in equations("linear")} <= {e.name for e in equations("affine")}
    assert "zero" not in {e.name for e in equations("linear")}


def test_run_suite_is_deterministic():
    f = prime_field(5)
    assert run_suite(f, samples=3, seed=9) == run_suite(f, samples=3, seed=9)


def _mutated(eq: Equation, kind) -> Equation:
    def build(f, rng, lin):
        lhs, rhs = eq.build(f, rng, lin)
        # stacking a non-trivial Pauli on every output perturbs the right side
        m, n = rhs.type
        if n == 0:
            return lhs, dg.tensor(rhs, kind(f, 1, 0, 0, 0))
        return lhs, dg.compose(rhs, dg.tensor_all(f, *[kind(f, 1, 0) for _ in range(n)]))

    return Equation(eq.name + "-mutated", eq.groups, build)


# discards swallow Paulis and the empty relation absorbs everything, so those are left out
MUTABLE = [e for e in EQUATIONS if "discard" not in e.groups and e.name != "zero"]


@pytest.mark.parametrize("eq", MUTABLE, ids=lambda e: e.name)
def test_mutations_are_caught(eq):
    # the checker would be worthless if a perturbed right-hand side still passed
    f = prime_field(5)
    rng = random.Random(eq.name)
    caught = [not all(check(_mutated(eq, k), f, rng) for _ in range(5)) for k in (dg.grey, dg.white)]
    assert any(caught)


def test_check_compares_semantics():
    f = prime_field(3)
    eq = Equation("trivial", ("affine",), lambda f, rng, lin: (dg.identity(f), dg.grey(f, 0, 0)))
    assert check(eq, f, random.Random(0))
    lhs, rhs = axioms.EQUATIONS[0].instance(f, random.Random(0))
    assert equal(dg.interpret(lhs), dg.interpret(rhs))

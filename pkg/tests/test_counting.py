import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsat2.counting import (
    MOD_PRIMES,
    ComponentCapError,
    RankBackendConfig,
    component_rank,
    component_value,
    instance_value,
    kernel_basis,
    product_tree,
)
from qsat2.exactq import GQ_ZERO
from qsat2.graphs import Graph, components, sample_er_graph
from qsat2.instances import FactorDistribution, Instance, sample_instance, satisfiable

from oracles import dense_component_value, dense_instance_value, diagonal_count

EXACT = RankBackendConfig(mode="exact_rational")


def inst_of(n, edges, pairs, f):
    return Instance(Graph(n, tuple(edges)), tuple(pairs), FactorDistribution.uniform(f), "any", 0, 0)


# --- fixed small cases: values worked out by the dense oracle -------------


def test_empty_graph_value_is_power_of_two():
    inst = inst_of(3, (), (), 2)
    assert instance_value(inst) == 8
    big = inst_of(500, (), (), 2)
    assert instance_value(big) == 2**500


def test_single_edge():
    inst = inst_of(2, [(0, 1)], [(0, 1)], 2)
    # one rank-1 constraint on 2 qubits
    assert instance_value(inst) == 3
    assert dense_instance_value(inst) == 3


def test_monotone_triangle():
    # h = j = same factor around a triangle
    inst = inst_of(3, [(0, 1), (0, 2), (1, 2)], [(0, 0), (0, 0), (0, 0)], 2)
    assert dense_instance_value(inst) == 4
    assert instance_value(inst) == 4


def test_path_of_three():
    inst = inst_of(3, [(0, 1), (1, 2)], [(0, 1), (0, 1)], 2)
    assert dense_instance_value(inst) == 4
    assert instance_value(inst) == 4


def test_star_k13():
    edges = [(0, 1), (0, 2), (0, 3)]
    inst = inst_of(4, edges, [(0, 1)] * 3, 2)
    assert dense_instance_value(inst) == 9
    assert instance_value(inst) == 9


def test_two_disjoint_edges():
    inst = inst_of(4, [(0, 1), (2, 3)], [(0, 1), (0, 1)], 2)
    assert dense_instance_value(inst) == 9
    assert instance_value(inst) == 9
    # and the per-component route gives 3 * 3
    assert component_value(inst, (0, 1), EXACT) == 3
    assert component_value(inst, (2, 3), EXACT) == 3


def test_frustrated_instance_value_zero():
    inst = inst_of(2, [(0, 1)], [(0, 0)], 1)
    assert instance_value(inst) > 0
    # 4-cycle, edges in canonical order with factor pairs aligned
    g_edges = [(0, 1), (0, 3), (1, 2), (2, 3)]
    pairs = [(0, 1), (0, 1), (0, 1), (0, 1)]
    inst2 = inst_of(4, g_edges, pairs, 2)
    assert satisfiable(inst2) == (instance_value(inst2) > 0)


# --- randomised agreement with the dense oracle ---------------------------


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000), st.integers(2, 7), st.integers(1, 3))
def test_value_matches_dense_oracle(seed, n, f):
    rng = random.Random(seed)
    m = rng.randint(0, min(10, n * (n - 1) // 2))
    g = sample_er_graph(n, m, seed=seed)
    inst = sample_instance(g, FactorDistribution.uniform(f), seed=seed + 1)
    assert instance_value(inst) == dense_instance_value(inst)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_modular_exact_and_dense_ranks_agree(seed):
    g = sample_er_graph(7, 9, seed=seed)
    inst = sample_instance(g, FactorDistribution.uniform(3), seed=seed)
    for comp in components(g).components:
        exact = component_rank(inst, comp, EXACT)
        modular = component_rank(inst, comp, RankBackendConfig(mode="modular"))
        k = len(comp)
        dense = 2**k - dense_component_value(inst, comp)
        assert exact == modular == dense


def test_diagonal_instances_count_basis_states():
    # f=2 default factors are <0| and <1|: rows diagonal, value countable
    for seed in range(30):
        g = sample_er_graph(8, 10, seed=seed)
        inst = sample_instance(g, FactorDistribution.uniform(2), seed=seed)
        assert instance_value(inst) == diagonal_count(inst)


def test_value_monotone_under_added_constraints():
    for seed in range(10):
        g = sample_er_graph(6, 8, seed=seed)
        inst = sample_instance(g, FactorDistribution.uniform(3), seed=seed)
        sub = Instance(
            Graph(6, g.edges[:4]), inst.pairs[:4], inst.dist, "any", 0, 0
        )
        assert instance_value(sub) >= instance_value(inst)


def test_decoupled_value_equals_raw():
    for seed in range(20):
        g = sample_er_graph(10, 11, seed=seed)
        inst = sample_instance(g, FactorDistribution.uniform(2), seed=seed)
        assert instance_value(inst, use_decoupling=True) == instance_value(
            inst, use_decoupling=False
        )


# --- kernel bases ----------------------------------------------------------


def _row_applies(vec, row):
    total = GQ_ZERO
    for col, val in row:
        coeff = vec.get(col)
        if coeff is not None:
            total = total + val * coeff
    return total.is_zero()


def test_kernel_basis_spans_and_annihilates():
    from qsat2.counting import _constraint_rows

    for seed in range(15):
        g = sample_er_graph(6, 7, seed=seed)
        inst = sample_instance(g, FactorDistribution.uniform(2), seed=seed)
        for comp in components(g).components:
            basis = kernel_basis(inst, comp)
            assert len(basis) == component_value(inst, comp, EXACT)
            rows = list(_constraint_rows(inst, comp))
            for vec in basis:
                assert vec  # nonzero
                for row in rows:
                    assert _row_applies(vec, row)
            leads = [min(v) for v in basis]
            assert len(set(leads)) == len(basis)


# --- backends, caps, products ----------------------------------------------


def test_mod_primes_are_suitable():
    # each prime must be = 1 mod 4 so that -1 is a quadratic residue
    for p in MOD_PRIMES:
        assert p % 4 == 1
        assert p.bit_length() == 62
        assert pow(2, p - 1, p) == 1  # Fermat sanity


def test_backend_config_validation():
    with pytest.raises(ValueError):
        RankBackendConfig(mode="floating")
    with pytest.raises(ValueError):
        RankBackendConfig(verify_primes=0)
    with pytest.raises(ValueError):
        RankBackendConfig(verify_primes=len(MOD_PRIMES) + 1)
    with pytest.raises(ValueError):
        RankBackendConfig(max_component_qubits=0)


def test_component_cap():
    g = sample_er_graph(20, 30, seed=1)
    inst = sample_instance(g, FactorDistribution.uniform(2), seed=1)
    comp = max(components(g).components, key=len)
    cfg = RankBackendConfig(max_component_qubits=4)
    with pytest.raises(ComponentCapError) as ei:
        component_value(inst, comp, cfg)
    err = ei.value
    assert err.size == len(comp) and err.cap == 4
    assert err.component == tuple(comp)


def test_instance_value_cap_escalates():
    g = sample_er_graph(12, 24, seed=3)
    inst = sample_instance(g, FactorDistribution.uniform(4), seed=3)
    if satisfiable(inst):
        with pytest.raises(ComponentCapError):
            instance_value(inst, RankBackendConfig(max_component_qubits=3))


def test_product_tree():
    assert product_tree([]) == 1
    assert product_tree([7]) == 7
    vals = [random.Random(0).randint(1, 2**40) for _ in range(257)]
    assert product_tree(vals) == math.prod(vals)


def test_product_tree_fast_on_many_bignums():
    import time

    rng = random.Random(1)
    vals = [1 << rng.randint(5, 60) for _ in range(10_000)]
    t0 = time.monotonic()
    got = product_tree(vals)
    dt = time.monotonic() - t0
    assert dt < 1.0
    assert got == math.prod(vals)

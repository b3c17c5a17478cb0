import math

import numpy as np
import pytest

from muletree import (
    BudgetExceeded,
    OracleBudget,
    brute_mule,
    brute_mwcds,
    epsilon_estimate,
    is_connected,
    make_graph,
    permutation_tour_oracle,
    solution_cost,
    wac_bound,
)

PATH4 = [(0, 0), (1, 0), (2, 0), (3, 0)]


def test_permutation_oracle():
    assert permutation_tour_oracle((0, 0), [(1, 0), (0, 1)]) == \
        pytest.approx(2 + math.sqrt(2))
    assert permutation_tour_oracle((0, 0), [(0, 0.5)]) == pytest.approx(1.0)
    assert permutation_tour_oracle((0, 0), []) == 0.0
    with pytest.raises(BudgetExceeded):
        permutation_tour_oracle((0, 0), [(0.1 * i, 0) for i in range(9)])


def test_brute_mwcds_path4():
    g = make_graph(PATH4)
    r = brute_mwcds(g, np.ones(4))
    assert r.nodes == [1, 2] and r.weight == pytest.approx(2.0)
    r20 = brute_mwcds(g, np.full(4, 20.0))
    assert r20.weight == pytest.approx(40.0)


def test_brute_mwcds_triangle_weighted():
    g = make_graph([(0, 0), (0.5, 0), (0.25, 0.4)])
    r = brute_mwcds(g, np.array([5.0, 7.0, 9.0]))
    assert r.nodes == [0] and r.weight == pytest.approx(5.0)


def test_brute_mwcds_prefers_light_witness():
    # heavy middle forces the enumeration to a wider but lighter set
    g = make_graph([(0, 0), (0.9, 0), (1.8, 0)])
    r = brute_mwcds(g, np.array([1.0, 50.0, 1.0]))
    assert r.nodes == [1]  # only node 1 dominates the path of 3
    g5 = make_graph([(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)])
    r5 = brute_mwcds(g5, np.array([1.0, 1.0, 100.0, 1.0, 1.0]))
    assert r5.nodes == [1, 2, 3]  # no way around the center on a path


def test_brute_mwcds_witness_is_cds():
    rng = np.random.Generator(np.random.PCG64(29))
    done = 0
    while done < 5:
        g = make_graph(rng.random((10, 2)) * 2.2)
        if not is_connected(g):
            continue
        r = brute_mwcds(g, np.ones(g.n))
        cov = set(r.nodes)
        for v in r.nodes:
            cov.update(int(u) for u in g.adj[v])
        assert cov == set(range(g.n))
        done += 1


def test_brute_mwcds_budget():
    g = make_graph([(0.05 * i, 0) for i in range(19)])
    with pytest.raises(BudgetExceeded):
        brute_mwcds(g, np.ones(19))
    with pytest.raises(BudgetExceeded):
        brute_mwcds(make_graph(PATH4), np.ones(4),
                    OracleBudget(time_limit=0.0))


def test_brute_mule_two_nodes():
    g = make_graph([(0, 0), (0.5, 0)])
    r = brute_mule(g)
    assert r.cost == pytest.approx(0.0)
    assert r.tree.validate(g)


def test_brute_mule_center_and_leaves():
    g = make_graph([(0, 0), (0.5, 0), (-0.5, 0)])
    r = brute_mule(g)
    # best known by hand: leaves under the center, mule at a leaf -> tour 2.0
    assert r.cost <= 2.0 + 1e-9
    assert r.tree.validate(g)
    total, _ = solution_cost(g, r.tree, r.mule)
    assert total == pytest.approx(r.cost)


def test_brute_mule_budget():
    g = make_graph([(0.4 * i, 0) for i in range(8)])
    with pytest.raises(BudgetExceeded):
        brute_mule(g)


def test_epsilon_estimate():
    c = wac_bound(0.2).c
    g = make_graph([(0, 0), (10, 0)])
    est = epsilon_estimate(g, [1], 0, c)
    assert est.condition_met
    assert est.average_distance == pytest.approx(10.0)
    assert est.value == pytest.approx(1.0 / (2.0 / (c + 2.6) * 8.7))
    assert est.value == pytest.approx(0.9833, abs=5e-4)

    near = epsilon_estimate(g, [0], 0, c)  # avg = 0 <= 1.3
    assert not near.condition_met and near.value is None

    g13 = make_graph([(0, 0), (1.3, 0)])
    assert not epsilon_estimate(g13, [1], 0, c).condition_met  # boundary


def test_epsilon_estimate_decreasing_in_average():
    c = wac_bound(0.2).c
    vals = []
    for d in (2.0, 3.0, 5.0, 9.0, 20.0, 200.0):
        g = make_graph([(0, 0), (d, 0)])
        vals.append(epsilon_estimate(g, [1], 0, c).value)
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.05  # -> 0 as the average grows

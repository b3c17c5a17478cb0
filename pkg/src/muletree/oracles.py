"""Brute-force reference solvers and the approximation-gap estimator.

These are deliberately independent of the primal-dual code paths; they
enumerate candidate solutions directly and are only intended for small
instances (budgets enforced below).
"""

import itertools
import math
import time
from dataclasses import dataclass

import numpy as np

from .tour import shortest_tour
from .tree import GatheringTree

MAX_NODES_MWCDS = 18
MAX_NODES_MULE = 7
MAX_TARGETS_PERMUTATION = 8


class BudgetExceeded(ValueError):
    """Instance too large (or too slow) for the requested brute-force oracle."""


@dataclass
class OracleBudget:
    max_nodes_mwcds: int = MAX_NODES_MWCDS
    max_nodes_mule: int = MAX_NODES_MULE
    time_limit: float = 600.0  # seconds, checked coarsely between batches


def permutation_tour_oracle(start, targets):
    """Exhaustive shortest closed tour through <= 8 targets."""
    pts = np.asarray(targets, dtype=np.float64).reshape(-1, 2)
    k = len(pts)
    if k > MAX_TARGETS_PERMUTATION:
        raise BudgetExceeded(f"{k} targets exceeds the permutation budget")
    if k == 0:
        return 0.0
    sx, sy = float(start[0]), float(start[1])
    best = math.inf
    for perm in itertools.permutations(range(k)):
        length = math.hypot(pts[perm[0], 0] - sx, pts[perm[0], 1] - sy)
        for a, b in zip(perm, perm[1:]):
            length += math.hypot(pts[a, 0] - pts[b, 0], pts[a, 1] - pts[b, 1])
        length += math.hypot(pts[perm[-1], 0] - sx, pts[perm[-1], 1] - sy)
        best = min(best, length)
    return best


@dataclass
class MwcdsResult:
    nodes: list
    weight: float


def brute_mwcds(g, w, budget=None):
    """Minimum-weight connected dominating set by subset enumeration."""
    budget = budget or OracleBudget()
    n = g.n
    if n > budget.max_nodes_mwcds:
        raise BudgetExceeded(f"{n} nodes exceeds the MWCDS oracle budget")
    deadline = time.monotonic() + budget.time_limit
    w = np.asarray(w, dtype=np.float64)
    cover = [(1 << v) | _mask(g.adj[v]) for v in range(n)]
    adj_mask = [_mask(g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    sorted_w = np.sort(w)
    prefix = np.concatenate([[0.0], np.cumsum(sorted_w)])
    best_w, best_set = math.inf, None
    for k in range(1, n + 1):
        if prefix[k] >= best_w:
            break
        if time.monotonic() > deadline:
            raise BudgetExceeded("MWCDS oracle time limit exceeded")
        for combo in itertools.combinations(range(n), k):
            weight = float(w[list(combo)].sum())
            if weight >= best_w:
                continue
            dom = 0
            for v in combo:
                dom |= cover[v]
            if dom != full:
                continue
            if not _mask_connected(combo, adj_mask):
                continue
            best_w, best_set = weight, list(combo)
    if best_set is None:
        raise ValueError("graph has no connected dominating set")
    return MwcdsResult(best_set, best_w)


def _mask(nodes):
    m = 0
    for v in nodes:
        m |= 1 << int(v)
    return m


def _mask_connected(members, adj_mask):
    mset = _mask(members)
    frontier = 1 << members[0]
    seen = frontier
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= adj_mask[v] & mset
        frontier = nxt & ~seen
        seen |= nxt
    return seen == mset


@dataclass
class MuleResult:
    tree: GatheringTree
    mule: int
    cost: float


def brute_mule(g, budget=None, exact_threshold=12):
    """Globally optimal mule location and gathering tree for tiny graphs.

    Enumerates every spanning tree (as an (n-1)-edge subset), every root, and
    every mule location; the objective is the summed shortest tour through
    each node's children.  First optimum found in enumeration order wins.
    """
    budget = budget or OracleBudget()
    n = g.n
    if n > budget.max_nodes_mule:
        raise BudgetExceeded(f"{n} nodes exceeds the mule oracle budget")
    deadline = time.monotonic() + budget.time_limit
    if n == 1:
        return MuleResult(GatheringTree([None], 0), 0, 0.0)
    edges = [
        (u, int(v)) for u in range(n) for v in g.adj[u] if u < v
    ]
    tour_memo = {}

    def tour_len(m, children):
        key = (m, frozenset(children))
        if key not in tour_memo:
            tour_memo[key] = shortest_tour(
                g.coords[m], g.coords[list(children)], exact_threshold
            ).length
        return tour_memo[key]

    best = None
    for combo in itertools.combinations(edges, n - 1):
        if time.monotonic() > deadline:
            raise BudgetExceeded("mule oracle time limit exceeded")
        uf = list(range(n))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        ok = True
        tadj = [[] for _ in range(n)]
        for u, v in combo:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            uf[ru] = rv
            tadj[u].append(v)
            tadj[v].append(u)
        if not ok:
            continue
        for root in range(n):
            parent = [None] * n
            stack = [root]
            seen = [False] * n
            seen[root] = True
            kids = [[] for _ in range(n)]
            while stack:
                x = stack.pop()
                for y in tadj[x]:
                    if not seen[y]:
                        seen[y] = True
                        parent[y] = x
                        kids[x].append(y)
                        stack.append(y)
            for m in range(n):
                cost = sum(
                    tour_len(m, kids[v]) for v in range(n) if kids[v]
                )
                if best is None or cost < best.cost - 1e-12:
                    best = MuleResult(GatheringTree(list(parent), root), m, cost)
    return best


@dataclass
class EpsilonEstimate:
    value: float  # None when the distance condition fails
    average_distance: float
    condition_met: bool


def epsilon_estimate(g, cds, m, c):
    """Approximation-gap estimate from the mean mule-to-backbone distance.

    eps_hat = ((2 / (C + 2.6)) * (avg - 1.3))^-1 where avg is the mean
    Euclidean distance from the mule to the backbone nodes; undefined
    (condition_met False) when avg <= 1.3.
    """
    cds = list(cds)
    d = np.sqrt(((g.coords[cds] - g.coords[m]) ** 2).sum(axis=1))
    avg = float(d.mean())
    if avg <= 1.3:
        return EpsilonEstimate(None, avg, False)
    value = 1.0 / ((2.0 / (c + 2.6)) * (avg - 1.3))
    return EpsilonEstimate(float(value), avg, True)

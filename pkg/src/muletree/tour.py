"""Collection tour evaluation: shortest circular tours from the mule through
point sets, and the failure-cost of a gathering tree.

Tours are evaluated between node positions (point-visit semantics); the cost
of physically approaching within the travel radius is folded into the
analytical constants, not into the reported lengths.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass
class TourResult:
    length: float
    order: list  # visiting order as indices into the target list
    exact: bool


def _as_array(points):
    arr = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    return arr


def shortest_tour(start, targets, exact_threshold=12):
    """Shortest closed tour from `start` through every target and back.

    Solved exactly with bitmask dynamic programming up to `exact_threshold`
    targets, otherwise by nearest-neighbor construction plus 2-opt.
    """
    pts = _as_array(targets)
    k = len(pts)
    if k == 0:
        return TourResult(0.0, [], True)
    sx, sy = float(start[0]), float(start[1])
    d0 = np.hypot(pts[:, 0] - sx, pts[:, 1] - sy)
    if k == 1:
        return TourResult(float(2.0 * d0[0]), [0], True)
    diff = pts[:, None, :] - pts[None, :, :]
    dm = np.sqrt((diff * diff).sum(axis=2))
    if k <= exact_threshold:
        return _tour_exact(d0, dm, k)
    return _tour_heuristic(d0, dm, k)


def _tour_exact(d0, dm, k):
    full = (1 << k) - 1
    inf = float("inf")
    dp = [[inf] * k for _ in range(1 << k)]
    par = [[-1] * k for _ in range(1 << k)]
    for i in range(k):
        dp[1 << i][i] = float(d0[i])
    for mask in range(1, full + 1):
        row = dp[mask]
        for last in range(k):
            cur = row[last]
            if cur == inf or not mask & (1 << last):
                continue
            drow = dm[last]
            for nxt in range(k):
                if mask & (1 << nxt):
                    continue
                nmask = mask | (1 << nxt)
                cand = cur + drow[nxt]
                if cand < dp[nmask][nxt]:
                    dp[nmask][nxt] = cand
                    par[nmask][nxt] = last
    best, best_last = inf, -1
    for last in range(k):
        cand = dp[full][last] + d0[last]
        if cand < best:
            best, best_last = cand, last
    order = []
    mask, last = full, best_last
    while last != -1:
        order.append(last)
        mask, last = mask ^ (1 << last), par[mask][last]
    order.reverse()
    return TourResult(float(best), order, True)


def _tour_heuristic(d0, dm, k, max_passes=60):
    # Nearest neighbor from the start position...
    unvisited = set(range(k))
    order = []
    cur_d = d0
    while unvisited:
        nxt = min(unvisited, key=lambda i: (cur_d[i], i))
        order.append(nxt)
        unvisited.discard(nxt)
        cur_d = dm[nxt]
    # ...then 2-opt on the closed tour with the start point held fixed.
    def leg(i, j):
        # distance between tour slots; slots -1 and k are the start position
        u = -1 if i < 0 or i >= k else order[i]
        v = -1 if j < 0 or j >= k else order[j]
        if u == -1 and v == -1:
            return 0.0
        if u == -1:
            return d0[v]
        if v == -1:
            return d0[u]
        return dm[u][v]

    improved = True
    passes = 0
    while improved and passes < max_passes:
        improved = False
        passes += 1
        for i in range(k - 1):
            for j in range(i + 1, k):
                # reverse order[i..j]; endpoints outside are i-1 and j+1
                before = leg(i - 1, i) + leg(j, j + 1)
                after = leg(i - 1, j) + leg(i, j + 1)
                if after < before - 1e-12:
                    order[i : j + 1] = order[i : j + 1][::-1]
                    improved = True
    length = d0[order[0]] + d0[order[-1]]
    for a, b in zip(order, order[1:]):
        length += dm[a][b]
    return TourResult(float(length), list(order), False)


@dataclass
class TourDecomposition:
    walk_forward: float  # start to the first target
    along_children: float  # remaining travel between targets
    walk_back: float  # last target back to the start
    order: list


def tour_decomposition(start, targets, exact_threshold=12):
    """Split a tour into first-leg, inter-target, and return-leg lengths."""
    pts = _as_array(targets)
    res = shortest_tour(start, pts, exact_threshold=exact_threshold)
    if not res.order:
        return TourDecomposition(0.0, 0.0, 0.0, [])
    sx, sy = float(start[0]), float(start[1])
    first = pts[res.order[0]]
    last = pts[res.order[-1]]
    lwf = float(math.hypot(first[0] - sx, first[1] - sy))
    lwb = float(math.hypot(last[0] - sx, last[1] - sy))
    return TourDecomposition(lwf, res.length - lwf - lwb, lwb, res.order)


@dataclass
class NodeTour:
    node: int
    n_children: int
    length: float
    exact: bool


def solution_cost(g, tree, m, exact_threshold=12):
    """Expected-failure objective: sum over nodes of the shortest tour from
    the mule position through the node's children in the gathering tree.

    Returns (total, per-node breakdown for nodes that have children).
    """
    kids = tree.children()
    start = g.coords[m]
    total = 0.0
    breakdown = []
    for v in range(g.n):
        ch = kids[v]
        if not ch:
            continue
        res = shortest_tour(start, g.coords[ch], exact_threshold=exact_threshold)
        total += res.length
        breakdown.append(NodeTour(v, len(ch), res.length, res.exact))
    return total, breakdown

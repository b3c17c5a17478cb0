"""Gathering tree construction: reduction weights, backbone search over mule
locations, and assembly of the final tree rooted near the collector."""

import math
from dataclasses import dataclass

import numpy as np

from .geom import bfs_parents, hop_diameter
from .primal_dual import build_cds, build_ids, check_dual_feasible


@dataclass(frozen=True)
class ReductionConstants:
    r_m: float
    n_r: int
    c1: float
    c: float


def wac_bound(r_m):
    """Per-failure detour constant C1 for mule travel radius r_m in (0, 0.3).

    N_R = ceil((1 - r_m) / (2 r_m)) is the number of stop rings needed to
    cover a unit disk with disks of radius r_m; C1 = (1 + r_m)(1 + pi(1 + N_R)).
    """
    if not 0.0 < r_m < 0.3:
        raise ValueError("r_m must lie in (0, 0.3)")
    n_r = math.ceil((1.0 - r_m) / (2.0 * r_m))
    c1 = (1.0 + r_m) * (1.0 + math.pi * (1 + n_r))
    return ReductionConstants(r_m=r_m, n_r=n_r, c1=c1, c=2.0 + c1)


def weight_constant(r_m):
    """Additive node-weight constant C = 2 + C1; exceeds 14.5 on (0, 0.3)."""
    return wac_bound(r_m).c


def reduction_weights(g, m, c):
    """Node weights w(v) = 2 dist(m, v) + C for candidate mule location m."""
    d = np.sqrt(((g.coords - g.coords[m]) ** 2).sum(axis=1))
    return 2.0 * d + c


@dataclass
class GatheringTree:
    parent: list  # parent[v] is the upstream node, None for the root
    root: int

    def children(self):
        kids = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return kids

    def validate(self, g):
        n = len(self.parent)
        if n != g.n:
            raise ValueError("tree size does not match graph")
        if self.parent[self.root] is not None:
            raise ValueError("root must have no parent")
        seen = 0
        for v in range(n):
            u, hops = v, 0
            while self.parent[u] is not None:
                u = self.parent[u]
                hops += 1
                if hops > n:
                    raise ValueError("cycle in parent map")
            if u != self.root:
                raise ValueError(f"node {v} does not reach the root")
            seen += 1
        return seen == n


@dataclass
class LocationRun:
    """Full pipeline output for one candidate mule location."""

    mule: int
    weights: np.ndarray
    ids_result: object
    cds_result: object
    weight_cds: float

    @property
    def lower_bound(self):
        return self.ids_result.lower_bound + self.cds_result.lower_bound


@dataclass
class MuleSolution:
    mule: int
    tree: GatheringTree
    cds: list
    ds: list
    weight_cds: float
    lower_bound: float
    lb1: float
    lb2: float
    alpha: float
    alpha_valid: bool
    lb_valid: bool
    root: int
    diameter: int
    run: LocationRun = None

    def to_json(self):
        return {
            "mule": self.mule,
            "root": self.root,
            "parent": [p if p is None else int(p) for p in self.tree.parent],
            "cds": [int(v) for v in self.cds],
            "ds": [int(v) for v in self.ds],
            "weight_cds": self.weight_cds,
            "lower_bound": self.lower_bound,
            "lb1": self.lb1,
            "lb2": self.lb2,
            "alpha": self.alpha,
            "alpha_valid": self.alpha_valid,
            "lb_valid": self.lb_valid,
            "diameter": self.diameter,
        }


def solve_at_location(g, m, consts, instrument=False):
    """Run both primal-dual phases with weights centered on location m."""
    w = reduction_weights(g, m, consts.c)
    ids = build_ids(g, w, instrument=instrument)
    cds = build_cds(g, w, ids.chosen, instrument=instrument)
    weight_cds = float(w[list(cds.chosen)].sum())
    return LocationRun(m, w, ids, cds, weight_cds)


def nearest_node(g, point):
    """Index of the node nearest to an (x, y) point; ties to the lowest index."""
    d = ((g.coords - np.asarray(point, dtype=np.float64)) ** 2).sum(axis=1)
    return int(np.argmin(d))


def build_gathering_tree(g, r_m, mule_policy="full-scan", center=None,
                         instrument=False):
    """Pick a mule location and assemble the gathering tree.

    full-scan tries every node as the collector location and keeps the
    strictly lightest backbone (ties keep the earlier location); center-node
    only prices the node nearest `center` (bounding-box center when not
    given).  The tree hangs the backbone off the first phase-one selection by
    BFS over the induced backbone, and attaches every remaining node to its
    nearest backbone node (Euclidean, ties to the lowest index).
    """
    consts = wac_bound(r_m)
    if mule_policy == "full-scan":
        candidates = range(g.n)
    elif mule_policy == "center-node":
        if center is None:
            center = (g.coords.min(axis=0) + g.coords.max(axis=0)) / 2.0
        candidates = [nearest_node(g, center)]
    else:
        raise ValueError(f"unknown mule policy {mule_policy!r}")

    best = None
    for m in candidates:
        run = solve_at_location(g, m, consts, instrument=instrument)
        if best is None or run.weight_cds < best.weight_cds:
            best = run

    root = best.ids_result.selection_order[0]
    cds_nodes = list(best.cds_result.chosen)
    backbone_parent = bfs_parents(g, cds_nodes, root)
    parent = [None] * g.n
    in_cds = np.zeros(g.n, dtype=bool)
    in_cds[cds_nodes] = True
    for v, p in backbone_parent.items():
        parent[v] = p
    cds_arr = np.array(cds_nodes)
    for u in range(g.n):
        if in_cds[u]:
            continue
        d = np.sqrt(((g.coords[cds_arr] - g.coords[u]) ** 2).sum(axis=1))
        parent[u] = int(cds_arr[int(np.argmin(d))])

    diam = hop_diameter(g)
    lb = best.lower_bound
    return MuleSolution(
        mule=best.mule,
        tree=GatheringTree(parent=parent, root=root),
        cds=cds_nodes,
        ds=list(best.ids_result.chosen),
        weight_cds=best.weight_cds,
        lower_bound=lb,
        lb1=best.ids_result.lower_bound,
        lb2=best.cds_result.lower_bound,
        alpha=best.weight_cds / lb,
        alpha_valid=diam >= 3,
        lb_valid=best.cds_result.lb_valid,
        root=root,
        diameter=diam,
        run=best,
    )


def verify_solution(g, solution, tol=1e-9):
    """Dual feasibility and structural checks for a finished solution."""
    run = solution.run
    report = check_dual_feasible(g, run.weights, run.ids_result, run.cds_result, tol=tol)
    checks = {
        "dual_feasible": report.ok,
        "tree_valid": solution.tree.validate(g),
        "ds_independent": _independent(g, solution.ds),
        "ds_dominating": _dominating(g, solution.ds),
        "cds_connected_dominating": _dominating(g, solution.cds)
        and _induced_connected(g, solution.cds),
        "cds_contains_ds": set(solution.ds) <= set(solution.cds),
        "cds_size": len(solution.cds) <= 3 * len(solution.ds),
        "ds_packing": _max_ds_neighbors(g, solution.ds) <= 5,
    }
    return checks, report


def _independent(g, nodes):
    s = set(nodes)
    return not any(int(u) in s for v in s for u in g.adj[v])


def _dominating(g, nodes):
    dom = np.zeros(g.n, dtype=bool)
    for v in nodes:
        dom[v] = True
        dom[g.adj[v]] = True
    return bool(dom.all())


def _induced_connected(g, nodes):
    try:
        bfs_parents(g, nodes, next(iter(nodes)))
    except Exception:
        return False
    return True


def _max_ds_neighbors(g, ds):
    s = set(ds)
    return max(sum(1 for u in g.adj[v] if int(u) in s) for v in range(g.n))

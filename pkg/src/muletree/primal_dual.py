"""Primal-dual construction of a weighted independent dominating set and its
completion to a connected dominating set, together with the dual lower bounds.

Both phases grow dual variables y(S) over a family of active node subsets.
A subset is "restricted" (g(S) = 0) once a selected node touches its
neighborhood; restricted duals are frozen.  The implementation keeps two
per-node summaries instead of scanning the family:

    sum_y[v] = sum of y(S) over subsets S with v in N(S)
    sum_g[v] = number of un-restricted subsets S with v in N(S)

where N(S) is the set of nodes outside S adjacent to some member of S.
Each step selects the node minimizing the potential

    eps(v) = (c_v - sum_y[v]) / sum_g[v]      (infinite when sum_g[v] = 0)

raises every un-restricted dual by eps, then restricts the subsets adjacent
to the selected node.
"""

from dataclasses import dataclass, field

import numpy as np

from .geom import is_connected

# Capacity split between the two phases: the independent-set phase prices each
# node at w/100, the connector phase at 99w/100, and connector singletons are
# pre-charged 99(w-2)/500 so that five of them stay within a node's capacity.
IDS_FRACTION = 1.0 / 100.0
CDS_FRACTION = 99.0 / 100.0
CDS_SEED_FRACTION = 99.0 / 500.0

_CHECK_TOL = 1e-9


class AlgorithmError(RuntimeError):
    """Internal invariant violated during a primal-dual run."""


@dataclass
class DualState:
    """Per-node view of the dual: capacities and neighborhood summaries."""

    c: np.ndarray
    sum_y: np.ndarray
    sum_g: np.ndarray


def potential(v, state):
    """eps(v): remaining capacity split over adjacent un-restricted subsets."""
    if state.sum_g[v] == 0:
        return float("inf")
    return float((state.c[v] - state.sum_y[v]) / state.sum_g[v])


def potential_vector(state):
    with np.errstate(divide="ignore", invalid="ignore"):
        eps = np.where(
            state.sum_g > 0,
            (state.c - state.sum_y) / np.maximum(state.sum_g, 1),
            np.inf,
        )
    return eps


@dataclass
class StepRecord:
    node: int
    eps: float
    added: bool
    n_subsets: int


@dataclass
class PdResult:
    chosen: list
    lower_bound: float
    singleton_y: np.ndarray
    selection_order: list
    lb_valid: bool = True
    trace: list = field(default=None, repr=False)

    def to_json(self):
        return {
            "chosen": [int(v) for v in self.chosen],
            "lower_bound": self.lower_bound,
            "singleton_y": [float(y) for y in self.singleton_y],
            "selection_order": [int(v) for v in self.selection_order],
            "lb_valid": self.lb_valid,
        }


def _validate_weights(g, w):
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (g.n,):
        raise ValueError("weight vector length must equal node count")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weights must be finite and positive")
    return w


def build_ids(g, w, instrument=False):
    """Phase one: independent dominating set with dual lower bound LB1.

    Active subsets start as all singletons with capacity c_v = w(v)/100.
    When a not-yet-selected node loses its last adjacent un-restricted subset
    a complement subset V \\ {u} is opened for it (tracked symbolically: its
    only outside neighbor is u itself).  Returns the selected independent
    dominating set and LB1 = sum of singleton duals.
    """
    w = _validate_weights(g, w)
    if g.n < 2:
        raise ValueError("build_ids needs at least two nodes")
    if not is_connected(g):
        raise ValueError("build_ids requires a connected graph")

    n = g.n
    c = w * IDS_FRACTION
    y_single = np.zeros(n)
    g_single = np.ones(n, dtype=bool)
    comp = {}  # u -> [y, g] for the complement subset V \ {u}
    sum_y = np.zeros(n)
    sum_g = g.degrees.astype(np.int64).copy()
    dominated = np.zeros(n, dtype=bool)
    selected = np.zeros(n, dtype=bool)
    ds = []
    order = []
    trace = [] if instrument else None
    adjm = g.adj_matrix

    while not dominated.all():
        state = DualState(c, sum_y, sum_g)
        eps_arr = potential_vector(state)
        v = int(np.argmin(eps_arr))  # ties resolved to the lowest index
        eps = float(eps_arr[v])
        if not np.isfinite(eps):
            raise AlgorithmError("all potentials infinite before domination")
        eps = max(eps, 0.0)
        if selected[v]:
            raise AlgorithmError(f"node {v} selected twice")
        selected[v] = True
        order.append(v)

        added = not dominated[v]
        if added:
            ds.append(v)
            dominated[v] = True
            dominated |= adjm[v]

        # Raise every dual that was un-restricted at the start of the step...
        sum_y += sum_g * eps
        y_single[g_single] += eps
        for rec in comp.values():
            if rec[1]:
                rec[0] += eps
        # ...then restrict the subsets whose neighborhood contains v.
        nb = g.adj[v]
        newly = nb[g_single[nb]]
        if len(newly):
            g_single[newly] = False
            sum_g -= adjm[:, newly].sum(axis=1)
        rec = comp.get(v)
        if rec is not None and rec[1]:
            rec[1] = 0
            sum_g[v] -= 1
        # Open complements for unselected nodes left without active coverage.
        for u in np.where(~selected & (sum_g == 0))[0]:
            u = int(u)
            if u in comp:
                raise AlgorithmError(f"duplicate complement subset for {u}")
            comp[u] = [0.0, 1]
            sum_g[u] += 1

        if instrument:
            _check_ids_state(g, c, y_single, g_single, comp, sum_y, sum_g, v)
            trace.append(StepRecord(v, eps, added, n + len(comp)))

    if instrument and n + len(comp) > 2 * n:
        raise AlgorithmError("active family exceeded 2n subsets")
    return PdResult(
        chosen=ds,
        lower_bound=float(y_single.sum()),
        singleton_y=y_single,
        selection_order=order,
        trace=trace,
    )


def _check_ids_state(g, c, y_single, g_single, comp, sum_y, sum_g, v):
    n = g.n
    ref_y = np.zeros(n)
    ref_g = np.zeros(n, dtype=np.int64)
    for u in range(n):
        ref_y[g.adj[u]] += y_single[u]
        if g_single[u]:
            ref_g[g.adj[u]] += 1
    for u, (yy, gg) in comp.items():
        ref_y[u] += yy
        ref_g[u] += gg
    scale = max(1.0, float(np.abs(c).max()))
    if np.abs(ref_y - sum_y).max() > _CHECK_TOL * scale:
        raise AlgorithmError("sum_y summary diverged from definition")
    if (ref_g != sum_g).any():
        raise AlgorithmError("sum_g summary diverged from definition")
    if abs(sum_y[v] - c[v]) > _CHECK_TOL * max(1.0, abs(c[v])):
        raise AlgorithmError(f"selected node {v} not packed")


class _Subset:
    __slots__ = ("sid", "y", "neighbors", "singleton_of")

    def __init__(self, sid, y, neighbors, singleton_of=None):
        self.sid = sid
        self.y = y
        self.neighbors = neighbors
        self.singleton_of = singleton_of


def build_cds(g, w, ds, instrument=False):
    """Phase two: connect the independent dominating set; dual bound LB2.

    Active subsets start as the ds singletons, priced at c_v = 99 w(v)/100
    with duals pre-seeded to 99 (w(v) - 2)/500.  When a node v is selected
    the distinct un-restricted subsets touching it merge with v into one new
    subset.  If more than one subset touches v, v joins the set; subsets that
    touched v only through non-backbone members additionally contribute one
    such member as a connector (preferring ds members, then lowest index).

    Live subsets are tracked with a union-find over subset ids, so merges are
    cheap and each node sits in at most one un-restricted subset.
    """
    w = _validate_weights(g, w)
    n = g.n
    ds = [int(v) for v in ds]
    ds_set = set(ds)
    for v in ds:
        if any(int(u) in ds_set for u in g.adj[v]):
            raise ValueError("ds must be independent")
    dom = np.zeros(n, dtype=bool)
    dom[ds] = True
    for v in ds:
        dom[g.adj[v]] = True
    if not dom.all():
        raise ValueError("ds must be dominating")

    lb_valid = bool(np.all(w > 2.0))
    c = w * CDS_FRACTION
    y_seed = CDS_SEED_FRACTION * (w - 2.0)

    # Union-find over subset ids; only roots carry live subset records.
    uf_parent = {}

    def find(sid):
        root = sid
        while uf_parent[root] != root:
            root = uf_parent[root]
        while uf_parent[sid] != root:
            uf_parent[sid], sid = root, uf_parent[sid]
        return root

    subs = {}
    owner = np.full(n, -1, dtype=np.int64)  # raw subset id containing the node
    sum_y = np.zeros(n)
    sum_g = np.zeros(n, dtype=np.int64)
    y_final = {}  # frozen singleton duals, summed into LB2
    next_id = 0
    for v in ds:
        nb = set(int(u) for u in g.adj[v])
        subs[next_id] = _Subset(next_id, float(y_seed[v]), nb, singleton_of=v)
        uf_parent[next_id] = next_id
        owner[v] = next_id
        sum_y[g.adj[v]] += y_seed[v]
        sum_g[g.adj[v]] += 1
        next_id += 1

    cds = set(ds)
    selected = np.zeros(n, dtype=bool)
    order = []
    trace = [] if instrument else None
    live = len(subs)

    while live > 1:
        state = DualState(c, sum_y, sum_g)
        eps_arr = potential_vector(state)
        v = int(np.argmin(eps_arr))
        eps = float(eps_arr[v])
        if not np.isfinite(eps):
            raise AlgorithmError("all potentials infinite with several subsets live")
        eps = max(eps, 0.0)
        if selected[v] or owner[v] != -1:
            raise AlgorithmError(f"invalid selection of node {v}")
        selected[v] = True
        order.append(v)

        adj_v = [int(u) for u in g.adj[v]]
        s1_ids = sorted({find(owner[u]) for u in adj_v if owner[u] != -1})
        if len(s1_ids) != sum_g[v]:
            raise AlgorithmError("subset count summary diverged")
        s2_ids = {
            find(owner[u]) for u in adj_v if owner[u] != -1 and u in cds
        }

        if sum_g[v] > 1:
            cds.add(v)
            for sid in s1_ids:
                if sid in s2_ids:
                    continue
                cand = [u for u in adj_v if owner[u] != -1 and find(owner[u]) == sid]
                in_ds = [u for u in cand if u in ds_set]
                cds.add(min(in_ds) if in_ds else min(cand))

        # Dual raise, then restriction-by-merge of the touched subsets.
        sum_y += sum_g * eps
        for sub in subs.values():
            sub.y += eps

        counts = {}
        union_nb = set()
        for sid in s1_ids:
            sub = subs[sid]
            for u in sub.neighbors:
                counts[u] = counts.get(u, 0) + 1
            union_nb |= sub.neighbors
            if sub.singleton_of is not None:
                y_final[sub.singleton_of] = sub.y

        nid = next_id
        next_id += 1
        uf_parent[nid] = nid
        for sid in s1_ids:
            uf_parent[sid] = nid
            del subs[sid]
        owner[v] = nid

        def member(u):
            return owner[u] != -1 and find(owner[u]) == nid

        new_nb = {u for u in union_nb | set(adj_v) if not member(u)}
        subs[nid] = _Subset(nid, 0.0, new_nb)

        for u, cnt in counts.items():
            sum_g[u] -= cnt
        for u in new_nb:
            sum_g[u] += 1
        live += 1 - len(s1_ids)

        if instrument:
            _check_cds_state(g, c, subs, find, owner, sum_y, sum_g, v)
            trace.append(StepRecord(v, eps, v in cds, len(subs)))

    # Singletons never restricted keep their running dual.
    for sub in subs.values():
        if sub.singleton_of is not None:
            y_final[sub.singleton_of] = sub.y

    y_arr = np.zeros(n)
    for v in ds:
        y_arr[v] = y_final[v]
    return PdResult(
        chosen=sorted(cds),
        lower_bound=float(sum(y_final[v] for v in ds)),
        singleton_y=y_arr,
        selection_order=order,
        lb_valid=lb_valid,
        trace=trace,
    )


def _check_cds_state(g, c, subs, find, owner, sum_y, sum_g, v):
    n = g.n
    ref_g = np.zeros(n, dtype=np.int64)
    membership = np.zeros(n, dtype=np.int64)
    for sub in subs.values():
        for u in sub.neighbors:
            ref_g[u] += 1
    for u in range(n):
        if owner[u] != -1:
            sid = find(owner[u])
            if sid not in subs:
                raise AlgorithmError("owner points at a dead subset")
            membership[u] += 1
            if u in subs[sid].neighbors:
                raise AlgorithmError("subset lists its own member as neighbor")
    if (membership > 1).any():
        raise AlgorithmError("node in more than one un-restricted subset")
    if (ref_g != sum_g).any():
        raise AlgorithmError("sum_g summary diverged from definition")
    if sum_g.max() > 5:
        raise AlgorithmError("node adjacent to more than five un-restricted subsets")
    if abs(sum_y[v] - c[v]) > _CHECK_TOL * max(1.0, abs(c[v])):
        raise AlgorithmError(f"selected node {v} not packed")


@dataclass
class FeasibilityReport:
    ok: bool
    min_slack: float
    phase1_slack: np.ndarray
    phase2_slack: np.ndarray
    combined_slack: np.ndarray
    coverage_ok: bool

    def to_json(self):
        return {
            "ok": self.ok,
            "min_slack": self.min_slack,
            "coverage_ok": self.coverage_ok,
        }


def check_dual_feasible(g, w, ids_result, cds_result, tol=1e-9):
    """Verify the combined dual solution against node capacities.

    For every node v the phase-one singleton duals of its neighbors must stay
    within w(v)/100, the phase-two duals of its backbone-seed neighbors within
    99 w(v)/100, and the sum within w(v).  Also checks that no single node
    covers the whole graph (the regime in which singleton coverage demands
    are all 1 and the dual objective is a valid lower bound).
    """
    w = _validate_weights(g, w)
    n = g.n
    y1 = np.asarray(ids_result.singleton_y, dtype=np.float64)
    y2 = np.asarray(cds_result.singleton_y, dtype=np.float64)
    load1 = np.zeros(n)
    load2 = np.zeros(n)
    for u in range(n):
        load1[g.adj[u]] += y1[u]
        load2[g.adj[u]] += y2[u]
    s1 = w * IDS_FRACTION - load1
    s2 = w * CDS_FRACTION - load2
    sc = w - load1 - load2
    coverage_ok = all(len(g.adj[v]) + 1 < n for v in range(n))
    ok = bool(s1.min() >= -tol and s2.min() >= -tol and sc.min() >= -tol)
    return FeasibilityReport(
        ok=ok,
        min_slack=float(min(s1.min(), s2.min(), sc.min())),
        phase1_slack=s1,
        phase2_slack=s2,
        combined_slack=sc,
        coverage_ok=coverage_ok,
    )

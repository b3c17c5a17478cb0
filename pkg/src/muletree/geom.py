"""Unit disk graphs over 2D point sets: construction, generation, traversal helpers."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

# Communication radius of the sensors.  Positions are expressed in units of R,
# so the graph has an edge exactly when the Euclidean distance is <= 1.
RADIUS = 1.0


class GraphError(ValueError):
    """Raised for malformed point sets or invalid graph queries."""


class GenerationFailed(RuntimeError):
    """Raised when rejection sampling fails to produce a connected graph."""

    def __init__(self, attempts):
        super().__init__(
            f"no connected graph after {attempts} sampled point sets"
        )
        self.attempts = attempts


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GraphError(f"non-finite coordinate ({self.x}, {self.y})")


class UnitDiskGraph:
    """Undirected unit disk graph; nodes are integer indices into `coords`.

    Edge rule: dist(u, v) <= 1 (inclusive, double precision).
    """

    def __init__(self, coords):
        coords = np.asarray(coords, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[1] != 2:
            raise GraphError("coords must have shape (n, 2)")
        if coords.shape[0] < 1:
            raise GraphError("graph needs at least one node")
        if not np.all(np.isfinite(coords)):
            raise GraphError("coordinates must be finite")
        self.coords = coords
        self.n = coords.shape[0]
        diff = coords[:, None, :] - coords[None, :, :]
        d = np.sqrt((diff * diff).sum(axis=2))
        adj_matrix = d <= RADIUS
        np.fill_diagonal(adj_matrix, False)
        self.adj_matrix = adj_matrix
        self._dist = d
        # Sorted neighbor arrays; np.where output is already ascending.
        self.adj = [np.where(adj_matrix[v])[0] for v in range(self.n)]
        self.degrees = np.array([len(a) for a in self.adj])

    def neighbors(self, v):
        return self.adj[v]

    def has_edge(self, u, v):
        return bool(self.adj_matrix[u, v])

    def dist(self, u, v):
        """Euclidean distance between nodes u and v."""
        return float(self._dist[u, v])

    def dist_to_point(self, p, v):
        px, py = (p.x, p.y) if isinstance(p, Point) else (p[0], p[1])
        return float(math.hypot(px - self.coords[v, 0], py - self.coords[v, 1]))

    def max_degree(self):
        return int(self.degrees.max())


def make_graph(points):
    """Build a UnitDiskGraph from a sequence of Point or (x, y) pairs."""
    coords = []
    for p in points:
        if isinstance(p, Point):
            coords.append((p.x, p.y))
        else:
            coords.append((float(p[0]), float(p[1])))
    if not coords:
        raise GraphError("empty point set")
    return UnitDiskGraph(np.array(coords, dtype=np.float64))


@dataclass
class GenParams:
    """Parameters for random deployment over an area_side x area_side square."""

    area_side: float
    density: float
    seed: int
    max_rejections: int = 200

    def node_count(self):
        n = int(round(self.density * self.area_side ** 2))
        if n < 1:
            raise GraphError(
                f"density {self.density} on side {self.area_side} yields no nodes"
            )
        return n


def generate_random_udg(params):
    """Sample uniform points until the induced unit disk graph is connected.

    The whole point set is re-drawn on failure (reject-and-resample).  The
    generator is numpy's PCG64 seeded with params.seed, so results are
    reproducible across platforms.  Raises GenerationFailed after
    params.max_rejections failed attempts.
    """
    n = params.node_count()
    rng = np.random.Generator(np.random.PCG64(params.seed))
    for _ in range(params.max_rejections):
        coords = rng.random((n, 2)) * params.area_side
        g = UnitDiskGraph(coords)
        if is_connected(g):
            return g
    raise GenerationFailed(params.max_rejections)


def is_connected(g):
    if g.n == 1:
        return True
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if not seen[u]:
                seen[u] = True
                stack.append(u)
    return bool(seen.all())


def hop_diameter(g):
    """Maximum over node pairs of the hop (unweighted shortest path) distance."""
    if g.n == 1:
        return 0
    sp = csr_matrix(g.adj_matrix.astype(np.int8))
    d = shortest_path(sp, method="D", unweighted=True, directed=False)
    if np.isinf(d).any():
        raise GraphError("hop_diameter requires a connected graph")
    return int(d.max())


def bfs_parents(g, subset, root):
    """BFS predecessor map over the subgraph induced by `subset`, from `root`.

    Neighbors are visited in ascending index order, so the result is
    deterministic.  Returns {node: parent} with parent None for the root.
    Raises GraphError if the induced subgraph does not reach all of `subset`.
    """
    members = set(subset)
    if root not in members:
        raise GraphError("root must belong to subset")
    parent = {root: None}
    queue = [root]
    while queue:
        nxt = []
        for v in queue:
            for u in g.adj[v]:
                u = int(u)
                if u in members and u not in parent:
                    parent[u] = v
                    nxt.append(u)
        queue = nxt
    if len(parent) != len(members):
        raise GraphError("subset does not induce a connected subgraph")
    return parent


def write_graph_file(g, path):
    """Text format: first line n, then one `index x y` line per node."""
    with open(path, "w") as fh:
        fh.write(f"{g.n}\n")
        for i in range(g.n):
            fh.write(f"{i} {float(g.coords[i, 0])!r} {float(g.coords[i, 1])!r}\n")


def read_graph_file(path):
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise GraphError(f"{path}: empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphError(f"{path}: first line must be the node count")
    if len(lines) != n + 1:
        raise GraphError(f"{path}: expected {n} node lines, got {len(lines) - 1}")
    coords = np.zeros((n, 2))
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphError(f"{path}: bad node line {ln!r}")
        i = int(parts[0])
        if not 0 <= i < n:
            raise GraphError(f"{path}: node index {i} out of range")
        coords[i] = (float(parts[1]), float(parts[2]))
    return UnitDiskGraph(coords)

"""Simulation sweeps over deployment area and density, with CSV output."""

import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .geom import GenParams, GenerationFailed, generate_random_udg
from .oracles import epsilon_estimate
from .tour import solution_cost
from .tree import build_gathering_tree, wac_bound

DEFAULT_AREAS = [4.0, 16.0, 36.0]
DEFAULT_DENSITIES = [2.5, 5.0, 10.0, 20.0, 40.0]
DEFAULT_RM = 0.2

CSV_SCHEMA = "muletree-sweep-v1"
CSV_COLUMNS = [
    "area",
    "density",
    "seed",
    "n",
    "diameter",
    "alpha",
    "alpha_valid",
    "weight_cds",
    "lb",
    "epsilon_hat",
    "solution_cost",
    "runtime_ms",
]
EPS_UNDEFINED = "cond-violated"


@dataclass
class SweepSpec:
    areas: list = field(default_factory=lambda: list(DEFAULT_AREAS))
    densities: list = field(default_factory=lambda: list(DEFAULT_DENSITIES))
    seeds_per_cell: int = 5
    base_seed: int = 0
    r_m: float = DEFAULT_RM
    mule_policy: str = "center-node"
    jobs: int = 1
    exact_threshold: int = 12
    max_rejections: int = 200


@dataclass
class SweepRecord:
    area: float
    density: float
    seed: int
    n: int
    diameter: int
    alpha: float
    alpha_valid: bool
    weight_cds: float
    lb: float
    epsilon_hat: float  # None when the distance condition fails
    solution_cost: float
    runtime_ms: float
    solution: object = None  # dropped before CSV serialization


def cell_seed(base_seed, area, density, k):
    """Stable 64-bit per-cell seed derived from the base seed and cell keys."""
    key = f"{base_seed}|{area!r}|{density!r}|{k}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def run_cell(area, density, seed, r_m, mule_policy, exact_threshold=12,
             max_rejections=200, keep_solution=False):
    """Generate one deployment and solve it; returns a SweepRecord."""
    side = math.sqrt(area)
    params = GenParams(area_side=side, density=density, seed=seed,
                       max_rejections=max_rejections)
    g = generate_random_udg(params)
    t0 = time.perf_counter()
    sol = build_gathering_tree(
        g, r_m, mule_policy=mule_policy, center=(side / 2.0, side / 2.0)
    )
    runtime_ms = (time.perf_counter() - t0) * 1000.0
    consts = wac_bound(r_m)
    eps = epsilon_estimate(g, sol.cds, sol.mule, consts.c)
    cost, _ = solution_cost(g, sol.tree, sol.mule, exact_threshold=exact_threshold)
    return SweepRecord(
        area=float(area),
        density=float(density),
        seed=int(seed),
        n=g.n,
        diameter=sol.diameter,
        alpha=sol.alpha,
        alpha_valid=sol.alpha_valid,
        weight_cds=sol.weight_cds,
        lb=sol.lower_bound,
        epsilon_hat=eps.value,
        solution_cost=cost,
        runtime_ms=runtime_ms,
        solution=(g, sol) if keep_solution else None,
    )


def _run_cell_args(args):
    try:
        return run_cell(*args)
    except GenerationFailed as exc:
        return (args[0], args[1], args[2], str(exc))


def run_sweep(spec, keep_solutions=False, failures=None):
    """All (area, density, seed) cells of the spec, in deterministic order.

    Cells whose generation fails are skipped; they are appended to the
    optional `failures` list as (area, density, seed, message).
    """
    if not spec.areas or not spec.densities or spec.seeds_per_cell < 1:
        raise ValueError("sweep needs nonempty areas/densities and >= 1 seed")
    if not 0.0 < spec.r_m < 0.3:
        raise ValueError("r_m must lie in (0, 0.3)")
    tasks = []
    for area in spec.areas:
        for density in spec.densities:
            for k in range(spec.seeds_per_cell):
                tasks.append((
                    area, density,
                    cell_seed(spec.base_seed, area, density, k),
                    spec.r_m, spec.mule_policy, spec.exact_threshold,
                    spec.max_rejections, keep_solutions,
                ))
    if spec.jobs > 1 and not keep_solutions:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            results = list(pool.map(_run_cell_args, tasks))
    else:
        results = [_run_cell_args(t) for t in tasks]
    records = [r for r in results if isinstance(r, SweepRecord)]
    if failures is not None:
        failures.extend(r for r in results if not isinstance(r, SweepRecord))
    records.sort(key=lambda r: (r.area, r.density, r.seed))
    return records


def run_density_sweep(spec=None, **overrides):
    spec = replace(spec or SweepSpec(), **overrides)
    return run_sweep(spec)


def run_area_sweep(spec=None, **overrides):
    base = spec or SweepSpec(densities=[2.5, 10.0, 40.0])
    return run_sweep(replace(base, **overrides))


def _fmt(x):
    if x is None:
        return EPS_UNDEFINED
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return f"{x:.10g}"
    return str(x)


def write_csv(records, fh):
    """Write records with a schema comment line and fixed column order."""
    fh.write(f"# {CSV_SCHEMA}\n")
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        row = [
            r.area, r.density, r.seed, r.n, r.diameter, r.alpha,
            r.alpha_valid, r.weight_cds, r.lb, r.epsilon_hat,
            r.solution_cost, r.runtime_ms,
        ]
        fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv(fh):
    """Parse a sweep CSV back into SweepRecords (runtime included)."""
    lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0].startswith(f"# {CSV_SCHEMA}"):
        raise ValueError("missing or unknown sweep CSV schema line")
    if lines[1].split(",") != CSV_COLUMNS:
        raise ValueError("unexpected sweep CSV columns")
    records = []
    for ln in lines[2:]:
        if not ln:
            continue
        vals = dict(zip(CSV_COLUMNS, ln.split(",")))
        records.append(SweepRecord(
            area=float(vals["area"]),
            density=float(vals["density"]),
            seed=int(vals["seed"]),
            n=int(vals["n"]),
            diameter=int(vals["diameter"]),
            alpha=float(vals["alpha"]),
            alpha_valid=vals["alpha_valid"] == "1",
            weight_cds=float(vals["weight_cds"]),
            lb=float(vals["lb"]),
            epsilon_hat=(None if vals["epsilon_hat"] == EPS_UNDEFINED
                         else float(vals["epsilon_hat"])),
            solution_cost=float(vals["solution_cost"]),
            runtime_ms=float(vals["runtime_ms"]),
        ))
    return records

"""Primal-dual gathering trees and mobile-collector placement on unit disk graphs."""

from .geom import (
    GenParams,
    GenerationFailed,
    GraphError,
    Point,
    UnitDiskGraph,
    bfs_parents,
    generate_random_udg,
    hop_diameter,
    is_connected,
    make_graph,
    read_graph_file,
    write_graph_file,
)
from .oracles import (
    BudgetExceeded,
    OracleBudget,
    brute_mule,
    brute_mwcds,
    epsilon_estimate,
    permutation_tour_oracle,
)
from .primal_dual import (
    AlgorithmError,
    DualState,
    PdResult,
    build_cds,
    build_ids,
    check_dual_feasible,
    potential,
)
from .sweeps import SweepRecord, SweepSpec, run_area_sweep, run_density_sweep, write_csv
from .tour import shortest_tour, solution_cost, tour_decomposition
from .tree import (
    GatheringTree,
    MuleSolution,
    build_gathering_tree,
    reduction_weights,
    solve_at_location,
    verify_solution,
    wac_bound,
    weight_constant,
)

__version__ = "0.1.0"

"""Pure parsimony xor haplotyping."""

from .errors import (
    BudgetError,
    CycleSumError,
    InvariantError,
    NotInClassError,
    ParseError,
    PPXHError,
    UsageError,
)
from .model import NULL, Instance, Solution, XorGraph, build_xor_graph, verify
from .reduce import ReducedInstance, lift, lower_bound, reduce
from .poly import solve_2inf, solve_approx, solve_inf2
from .fpt import decide_k, solve_exact
from .graphreal import RealizationFamily, RealizationSession, brute_force_realize, realize
from .heuristic import HeuristicConfig, heu, heu_best_of_permutations, ratio_r
from .oracle import OracleBudget, brute_min
from .estimator import PPXHSolver

__version__ = "0.1.0"

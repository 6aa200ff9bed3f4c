"""Biobjective inventory routing with compact periodic representations and archive-based local search."""

from .archive import Dedup, EvaluatedSolution, ObjectiveVector, ParetoArchive, dominates
from .encoding import DeliverySchedule, Genotype, Representation, decode, max_feasible_period
from .evaluation import Evaluator, evaluate
from .instance import Customer, GeneratorParams, Instance, build_distance_matrix, generate_instance, read_instance, write_instance
from .inventory import evaluate_holding, simulate_trace
from .metrics import epsilon_additive, hypervolume_2d
from .routing import clarke_wright, evaluate_routing, two_opt
from .search import SearchConfig, SearchStats, neighborhood, run
from .selection import SelectionStrategy, Strategy

__version__ = "0.1.0"

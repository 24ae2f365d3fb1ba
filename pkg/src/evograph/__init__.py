"""Transitive friend-recommendation model of social-network evolution."""

from .engine import (
    EvolutionParams,
    EvolutionTrace,
    GrowthConfig,
    RejectionPolicy,
    SweepReport,
    evolve,
    iterative_evolve,
    sweep,
)
from .generate import (
    GeneratorConfig,
    PerPairProbability,
    ScoreMode,
    UniformEdgeCount,
    generate_initial,
    random_attr,
)
from .model import EdgeAttr, SocialGraph
from .scoring import MeanKind, WitnessResult, best_witness, cumulative_score, factor_average

__all__ = [
    "EdgeAttr",
    "EvolutionParams",
    "EvolutionTrace",
    "GeneratorConfig",
    "GrowthConfig",
    "MeanKind",
    "PerPairProbability",
    "RejectionPolicy",
    "ScoreMode",
    "SocialGraph",
    "SweepReport",
    "UniformEdgeCount",
    "WitnessResult",
    "best_witness",
    "cumulative_score",
    "evolve",
    "factor_average",
    "generate_initial",
    "iterative_evolve",
    "random_attr",
    "sweep",
]

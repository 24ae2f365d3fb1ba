"""Seeded random initial graphs with random factor sets and scores.

Draw order (all from the ``"generate"`` sub-stream of ``cfg.seed``):

1. edge pairs, according to the edge model;
2. for each selected pair in ascending ``(u, v)`` order, one edge attr via
   :func:`random_attr`.

``UniformEdgeCount(m)`` draws ``u = randbelow(n)``, ``v = randbelow(n)``
repeatedly, discarding self-pairs and repeats, until ``m`` distinct pairs are
held.  When ``m`` exceeds half of all pairs the same procedure instead picks
the ``n(n-1)/2 - m`` pairs to leave out.  ``PerPairProbability(q)`` flips one
``bernoulli(q)`` per pair in ascending order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import EdgeAttr, SocialGraph
from .rng import Xoshiro256, derive_seed


class ConfigError(ValueError):
    pass


class ScoreMode(str, enum.Enum):
    CUMULATIVE = "cumulative"  # S_j drawn directly
    PER_FACTOR = "per_factor"  # s_i drawn per factor, S_j = sum


@dataclass(frozen=True)
class UniformEdgeCount:
    m: int


@dataclass(frozen=True)
class PerPairProbability:
    q: float


@dataclass
class GeneratorConfig:
    n: int = 400
    # None means UniformEdgeCount(2 * n), capped at the number of pairs.
    edge_model: UniformEdgeCount | PerPairProbability | None = None
    factor_universe: int = 8
    score_mode: ScoreMode = ScoreMode.CUMULATIVE
    score_min: int = 1
    score_max: int = 16
    seed: int = 0

    def __post_init__(self) -> None:
        self.score_mode = ScoreMode(self.score_mode)
        self.validate()

    @property
    def max_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    def resolved_edge_model(self) -> UniformEdgeCount | PerPairProbability:
        if self.edge_model is None:
            return UniformEdgeCount(min(2 * self.n, self.max_pairs))
        return self.edge_model

    def validate(self) -> None:
        if self.n < 0:
            raise ConfigError(f"n must be >= 0, got {self.n}")
        model = self.edge_model
        if isinstance(model, UniformEdgeCount):
            if not 0 <= model.m <= self.max_pairs:
                raise ConfigError(
                    f"edge count {model.m} outside [0, {self.max_pairs}] for n={self.n}"
                )
        elif isinstance(model, PerPairProbability):
            if not 0.0 <= model.q <= 1.0:
                raise ConfigError(f"edge probability must be in [0, 1], got {model.q}")
        elif model is not None:
            raise ConfigError(f"unknown edge model {model!r}")
        if self.factor_universe < 1:
            raise ConfigError(f"factor_universe must be >= 1, got {self.factor_universe}")
        if not 1 <= self.score_min <= self.score_max:
            raise ConfigError(
                f"score range must satisfy 1 <= min <= max, got [{self.score_min}, {self.score_max}]"
            )
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def random_attr(cfg: GeneratorConfig, rng: Xoshiro256) -> EdgeAttr:
    """One edge attr.

    Factors: ``getbits(|F|)`` read as a subset of ``1..|F|`` (bit ``i`` is
    factor ``i + 1``), redrawn while empty.  Score: one ``randint`` in
    cumulative mode, else one ``randint`` per factor in ascending order,
    summed.
    """
    width = cfg.factor_universe
    bits = 0
    while bits == 0:
        bits = rng.getbits(width)
    factors = [i + 1 for i in range(width) if bits >> i & 1]
    if cfg.score_mode is ScoreMode.CUMULATIVE:
        score = rng.randint(cfg.score_min, cfg.score_max)
    else:
        score = sum(rng.randint(cfg.score_min, cfg.score_max) for _ in factors)
    return EdgeAttr(factors, score)


def _distinct_pairs(n: int, count: int, rng: Xoshiro256) -> set[tuple[int, int]]:
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < count:
        u = rng.randbelow(n)
        v = rng.randbelow(n)
        if u == v:
            continue
        chosen.add((u, v) if u < v else (v, u))
    return chosen


def _select_pairs(cfg: GeneratorConfig, rng: Xoshiro256) -> list[tuple[int, int]]:
    n = cfg.n
    model = cfg.resolved_edge_model()
    if isinstance(model, PerPairProbability):
        return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.bernoulli(model.q)]
    total = cfg.max_pairs
    if 2 * model.m <= total:
        return sorted(_distinct_pairs(n, model.m, rng))
    left_out = _distinct_pairs(n, total - model.m, rng)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in left_out]


def generate_initial(cfg: GeneratorConfig) -> SocialGraph:
    cfg.validate()
    rng = Xoshiro256(derive_seed(cfg.seed, "generate"))
    g = SocialGraph(cfg.n)
    for u, v in _select_pairs(cfg, rng):
        g.add_edge(u, v, random_attr(cfg, rng))
    return g

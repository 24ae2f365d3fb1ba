"""Synchronous-sweep evolution of a social graph.

One sweep scores every absent pair against the graph as it stood at the
start of the sweep, flips one acceptance coin per above-threshold pair in
ascending ``(u, v)`` order, then commits all accepted edges together.  A new
edge carries the common factors of its best witness and the witness score.

Coins come from the ``"evolve"`` sub-stream of ``params.seed``; node growth in
:func:`iterative_evolve` uses the ``"growth"`` sub-stream.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from .generate import GeneratorConfig, random_attr
from .model import EdgeAttr, SocialGraph
from .rng import Xoshiro256, derive_seed
from .scoring import MeanKind, WitnessTable

logger = logging.getLogger(__name__)


class RejectionPolicy(str, enum.Enum):
    RETRY = "retry"
    PERMANENT = "permanent"


@dataclass
class EvolutionParams:
    threshold: float = 6.0
    accept_prob: float = 0.5
    mean: MeanKind = MeanKind.ARITHMETIC
    rejection_policy: RejectionPolicy = RejectionPolicy.RETRY
    # None means 10 * node_count of the starting graph.
    max_sweeps: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        self.mean = MeanKind(self.mean)
        self.rejection_policy = RejectionPolicy(self.rejection_policy)
        if not 0.0 <= self.accept_prob <= 1.0:
            raise ValueError(f"accept_prob must be in [0, 1], got {self.accept_prob}")
        if self.max_sweeps is not None and self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def sweep_cap(self, node_count: int) -> int:
        if self.max_sweeps is not None:
            return self.max_sweeps
        return max(1, 10 * node_count)


@dataclass
class SweepReport:
    sweep_index: int
    candidates_evaluated: int = 0
    added: list[tuple[int, int, EdgeAttr, int]] = field(default_factory=list)
    rejected_by_coin: list[tuple[int, int]] = field(default_factory=list)
    below_threshold: int = 0


@dataclass
class GrowthConfig:
    pool_size: int = 20
    attach_edges_per_node: tuple[int, int] = (1, 3)
    outer_steps: int = 1
    attr_source: GeneratorConfig = field(default_factory=lambda: GeneratorConfig(n=0))

    def __post_init__(self) -> None:
        lo, hi = self.attach_edges_per_node
        if self.pool_size < 1:
            raise ValueError(f"pool_size must be >= 1, got {self.pool_size}")
        if self.outer_steps < 1:
            raise ValueError(f"outer_steps must be >= 1, got {self.outer_steps}")
        if not 0 <= lo <= hi:
            raise ValueError(f"attach range must satisfy 0 <= lo <= hi, got {(lo, hi)}")


@dataclass
class GrowthEvent:
    outer_step: int
    new_nodes: list[int]
    new_edges: list[tuple[int, int, EdgeAttr]]


@dataclass
class EvolutionTrace:
    """Snapshots ``G_0 .. G_k`` and the sweep reports between them.

    For a plain :func:`evolve` run ``reports[i]`` takes ``snapshots[i]`` to
    ``snapshots[i + 1]``.  An :func:`iterative_evolve` run concatenates its
    phases: ``phases`` holds each inner trace, ``phase_starts`` the index in
    ``snapshots`` where each phase's ``G_0`` sits, and the last entry of
    ``phase_starts`` points at the graph left by the final growth burst.
    """

    snapshots: list[SocialGraph]
    reports: list[SweepReport]
    params: EvolutionParams
    truncated: bool = False
    phases: list["EvolutionTrace"] = field(default_factory=list)
    phase_starts: list[int] = field(default_factory=list)
    growth: list[GrowthEvent] = field(default_factory=list)

    @property
    def initial(self) -> SocialGraph:
        return self.snapshots[0]

    @property
    def final(self) -> SocialGraph:
        return self.snapshots[-1]

    @property
    def sweep_count(self) -> int:
        return len(self.reports)

    def snapshot_at(self, step: int) -> SocialGraph:
        """Graph after ``step`` outer steps of iterative growth (0 = initial)."""
        if not self.phase_starts:
            raise ValueError("snapshot_at needs a trace from iterative_evolve")
        return self.snapshots[self.phase_starts[step]]

    def birth_index(self) -> tuple[dict[int, int], dict[tuple[int, int], int]]:
        """First snapshot index at which each node and each edge appears."""
        node_birth: dict[int, int] = {}
        edge_birth: dict[tuple[int, int], int] = {}
        for i, snap in enumerate(self.snapshots):
            for u in range(len(node_birth), snap.node_count):
                node_birth[u] = i
            for u, v, _ in snap.edges():
                edge_birth.setdefault((u, v), i)
        return node_birth, edge_birth


def sweep(
    g: SocialGraph,
    params: EvolutionParams,
    rng: Xoshiro256,
    sweep_index: int = 1,
    excluded: set[tuple[int, int]] | frozenset[tuple[int, int]] = frozenset(),
    table: WitnessTable | None = None,
) -> SweepReport:
    """Run one synchronous sweep on ``g`` in place and report what happened.

    Pairs in ``excluded`` (permanently rejected) are skipped without a coin.
    ``table`` is an up-to-date :class:`WitnessTable` for ``g``; it is built
    when omitted and kept current when given.
    """
    if table is None:
        table = WitnessTable(g, params.mean)
    blocked = None
    if excluded:
        blocked = np.zeros(table.adj.shape, dtype=bool)
        eu, ev = zip(*excluded)
        blocked[list(eu), list(ev)] = True
    us, vs = table.candidate_pairs(blocked)
    scores = table.best[us, vs]
    above = np.flatnonzero(scores > params.threshold)
    report = SweepReport(sweep_index, candidates_evaluated=len(us))
    report.below_threshold = len(us) - len(above)
    queued: list[tuple[int, int]] = []
    p = params.accept_prob
    for u, v in zip(us[above].tolist(), vs[above].tolist()):
        if rng.bernoulli(p):
            queued.append((u, v))
        else:
            report.rejected_by_coin.append((u, v))
    for u, v in queued:
        res = table.result(u, v)
        attr = EdgeAttr(res.common_factors, res.score)
        g.add_edge(u, v, attr)
        report.added.append((u, v, attr, res.witness))
    table.add_edges(queued)
    return report


def _run_phase(g: SocialGraph, params: EvolutionParams, rng: Xoshiro256) -> EvolutionTrace:
    snapshots = [g.copy()]
    reports: list[SweepReport] = []
    excluded: set[tuple[int, int]] = set()
    cap = params.sweep_cap(g.node_count)
    permanent = params.rejection_policy is RejectionPolicy.PERMANENT
    table = WitnessTable(g, params.mean)
    truncated = True
    for i in range(1, cap + 1):
        report = sweep(g, params, rng, i, excluded, table)
        reports.append(report)
        snapshots.append(g.copy())
        if permanent:
            excluded.update(report.rejected_by_coin)
        if not report.added and (
            permanent or not report.rejected_by_coin or params.accept_prob == 0.0
        ):
            truncated = False
            break
    if truncated:
        logger.warning("evolution truncated after %d sweeps", cap)
    return EvolutionTrace(snapshots, reports, params, truncated)


def evolve(g0: SocialGraph, params: EvolutionParams) -> EvolutionTrace:
    """Sweep ``g0`` to a fixpoint (or ``params`` sweep cap); ``g0`` is not modified."""
    rng = Xoshiro256(derive_seed(params.seed, "evolve"))
    return _run_phase(g0.copy(), params, rng)


def _grow(
    g: SocialGraph, growth: GrowthConfig, rng: Xoshiro256, outer_step: int
) -> GrowthEvent:
    existing = g.node_count
    lo, hi = growth.attach_edges_per_node
    count = rng.randint(1, growth.pool_size)
    event = GrowthEvent(outer_step, [], [])
    for _ in range(count):
        node = g.add_node()
        event.new_nodes.append(node)
        attach = min(rng.randint(lo, hi), existing)
        for target in sorted(rng.sample(existing, attach)):
            attr = random_attr(growth.attr_source, rng)
            g.add_edge(target, node, attr)
            event.new_edges.append((target, node, attr))
    return event


def iterative_evolve(
    g0: SocialGraph, params: EvolutionParams, growth: GrowthConfig
) -> EvolutionTrace:
    """Alternate evolution to a fixpoint with bursts of new nodes.

    Each outer step evolves the current graph, then adds ``randint(1,
    pool_size)`` fresh nodes.  Each fresh node links to ``randint(lo, hi)``
    distinct nodes that existed before the burst (fewer if not enough
    exist), with attrs drawn from ``growth.attr_source``.
    """
    coins = Xoshiro256(derive_seed(params.seed, "evolve"))
    grow_rng = Xoshiro256(derive_seed(params.seed, "growth"))
    g = g0.copy()
    trace = EvolutionTrace([], [], params)
    for step in range(1, growth.outer_steps + 1):
        phase = _run_phase(g, params, coins)
        trace.phase_starts.append(len(trace.snapshots))
        trace.snapshots.extend(phase.snapshots)
        trace.reports.extend(phase.reports)
        trace.phases.append(phase)
        trace.truncated |= phase.truncated
        trace.growth.append(_grow(g, growth, grow_rng, step))
    trace.phase_starts.append(len(trace.snapshots))
    trace.snapshots.append(g.copy())
    return trace

"""Cumulative score of a two-hop candidate and witness selection.

For a candidate pair ``(u, v)`` and a common neighbor ``w`` let ``a`` and
``b`` be the attrs of ``{u, w}`` and ``{w, v}``, ``k = |F_a & F_b|`` and
``avg_x = S_x / |F_x|``.  The witness score is ``k`` times a mean of the two
per-factor averages::

    arithmetic  (k / 2) * (avg_a + avg_b)
    geometric   k * sqrt(avg_a * avg_b)
    harmonic    k * 2 / (1 / avg_a + 1 / avg_b)     (0 if either avg is 0)

The best witness is the one with the highest score; ties go to the smallest
node id.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import EdgeAttr, GraphError, SocialGraph


class MeanKind(str, enum.Enum):
    ARITHMETIC = "arithmetic"
    GEOMETRIC = "geometric"
    HARMONIC = "harmonic"


@dataclass(frozen=True)
class WitnessResult:
    witness: int
    score: float
    common_factors: frozenset[int]

    @property
    def k(self) -> int:
        return len(self.common_factors)


def factor_average(attr: EdgeAttr) -> float:
    return attr.score / len(attr.factors)


def _combine(k: int, avg_a: float, avg_b: float, mean: MeanKind) -> float:
    if k == 0:
        return 0.0
    if mean is MeanKind.ARITHMETIC:
        return (k / 2) * (avg_a + avg_b)
    if mean is MeanKind.GEOMETRIC:
        return k * math.sqrt(avg_a * avg_b)
    if mean is MeanKind.HARMONIC:
        if avg_a == 0.0 or avg_b == 0.0:
            return 0.0
        return k * 2 / (1 / avg_a + 1 / avg_b)
    raise ValueError(f"unknown mean kind: {mean!r}")


def cumulative_score(a: EdgeAttr, b: EdgeAttr, mean: MeanKind = MeanKind.ARITHMETIC) -> tuple[float, int]:
    """Witness score for incident edges ``a`` and ``b``; returns ``(score, k)``."""
    k = len(a.factors & b.factors)
    return _combine(k, factor_average(a), factor_average(b), MeanKind(mean)), k


def best_witness(
    g: SocialGraph, u: int, v: int, mean: MeanKind = MeanKind.ARITHMETIC
) -> WitnessResult | None:
    if g.has_edge(u, v):
        raise GraphError(f"best_witness called on present edge {(min(u, v), max(u, v))}")
    mean = MeanKind(mean)
    best: WitnessResult | None = None
    for w in g.common_neighbors(u, v):
        a = g.edge_attr(u, w)
        b = g.edge_attr(w, v)
        score, _ = cumulative_score(a, b, mean)
        if best is None or score > best.score:
            best = WitnessResult(w, score, a.factors & b.factors)
    return best


def all_best_witnesses_reference(
    g: SocialGraph, mean: MeanKind = MeanKind.ARITHMETIC
) -> list[tuple[int, int, WitnessResult]]:
    """Best witness of every absent pair that has one, in ``(u, v)`` order.

    Direct per-pair evaluation; quadratic in the node count.
    """
    out = []
    n = g.node_count
    for u in range(n):
        for v in range(u + 1, n):
            if g.has_edge(u, v):
                continue
            res = best_witness(g, u, v, mean)
            if res is not None:
                out.append((u, v, res))
    return out


class WitnessTable:
    """Best witness of every pair, kept current as edges are added.

    Edges are never removed and attrs never change, so a pair's witness set
    only grows: adding edge ``{a, w}`` makes ``w`` a new witness for exactly
    the pairs ``{a, x}`` with ``x`` a neighbor of ``w``.  :meth:`add_edges`
    scores those combinations only, one numpy block per witness in ascending
    order; building the table is the same update with every edge new.

    Factor sets are uint64 bitmasks, so at most 64 distinct factors.
    The arithmetic follows :func:`_combine` operation by operation, so scores
    are bit-identical to :func:`cumulative_score`.  Memory is ``O(n^2)``.
    """

    def __init__(self, g: SocialGraph, mean: MeanKind = MeanKind.ARITHMETIC) -> None:
        self.graph = g
        self.mean = MeanKind(mean)
        n = g.node_count
        universe = sorted({f for _, _, a in g.edges() for f in a.factors})
        if len(universe) > _MAX_BITS:
            raise ValueError(f"{len(universe)} distinct factors exceed the {_MAX_BITS}-bit mask")
        self._universe = universe
        self._bit_of = {f: 1 << i for i, f in enumerate(universe)}
        self._factors_of: dict[int, frozenset[int]] = {}
        self.adj = np.zeros((n, n), dtype=bool)
        self.masks = np.zeros((n, n), dtype=np.uint64)
        self.avgs = np.zeros((n, n), dtype=np.float64)
        # Only the upper triangle (u < v) is used.
        self.best = np.full((n, n), -np.inf)
        self.best_w = np.full((n, n), -1, dtype=np.int64)
        self.best_mask = np.zeros((n, n), dtype=np.uint64)
        self.add_edges([(u, v) for u, v, _ in g.edges()])

    def _mask_of(self, attr: EdgeAttr) -> int:
        m = 0
        for f in attr.factors:
            bit = self._bit_of.get(f)
            if bit is None:
                if len(self._universe) >= _MAX_BITS:
                    raise ValueError(f"more than {_MAX_BITS} distinct factors")
                bit = self._bit_of[f] = 1 << len(self._universe)
                self._universe.append(f)
            m |= bit
        return m

    def add_edges(self, pairs: list[tuple[int, int]]) -> None:
        """Register edges already added to the graph and rescore affected pairs."""
        g = self.graph
        new_partners: dict[int, list[int]] = {}
        for u, v in pairs:
            attr = g.edge_attr(u, v)
            m = np.uint64(self._mask_of(attr))
            avg = factor_average(attr)
            self.adj[u, v] = self.adj[v, u] = True
            self.masks[u, v] = self.masks[v, u] = m
            self.avgs[u, v] = self.avgs[v, u] = avg
            new_partners.setdefault(u, []).append(v)
            new_partners.setdefault(v, []).append(u)
        for w in sorted(new_partners):
            self._update_witness(w, np.array(sorted(new_partners[w]), dtype=np.int64))

    def _update_witness(self, w: int, partners: np.ndarray) -> None:
        nbrs = np.flatnonzero(self.adj[w])
        if len(nbrs) < 2:
            return
        row_m, row_a = self.masks[w], self.avgs[w]
        common = row_m[partners][:, None] & row_m[nbrs][None, :]
        k = np.bitwise_count(common).astype(np.float64)
        a = row_a[partners][:, None]
        b = row_a[nbrs][None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.mean is MeanKind.ARITHMETIC:
                s = (k / 2) * (a + b)
            elif self.mean is MeanKind.GEOMETRIC:
                s = k * np.sqrt(a * b)
            else:
                s = k * 2 / (1 / a + 1 / b)
                s[np.broadcast_to((a == 0.0) | (b == 0.0), s.shape)] = 0.0
        s[k == 0] = 0.0
        P = np.broadcast_to(partners[:, None], s.shape)
        X = np.broadcast_to(nbrs[None, :], s.shape)
        keep = P != X
        lo = np.minimum(P, X)[keep]
        hi = np.maximum(P, X)[keep]
        s = s[keep]
        common = common[keep]
        cur = self.best[lo, hi]
        better = (s > cur) | ((s == cur) & (w < self.best_w[lo, hi]))
        if not better.any():
            return
        lo, hi = lo[better], hi[better]
        # A pair may occur twice in one block (both ends new); the values agree.
        self.best[lo, hi] = s[better]
        self.best_w[lo, hi] = w
        self.best_mask[lo, hi] = common[better]

    def candidate_pairs(self, blocked: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Absent pairs with at least one witness, in ascending ``(u, v)`` order."""
        cand = (self.best > -np.inf) & ~self.adj
        if blocked is not None:
            cand &= ~blocked
        return np.nonzero(cand)

    def factors(self, bits: int) -> frozenset[int]:
        fs = self._factors_of.get(bits)
        if fs is None:
            fs = frozenset(f for i, f in enumerate(self._universe) if bits >> i & 1)
            self._factors_of[bits] = fs
        return fs

    def result(self, u: int, v: int) -> WitnessResult:
        if u > v:
            u, v = v, u
        return WitnessResult(
            int(self.best_w[u, v]), float(self.best[u, v]), self.factors(int(self.best_mask[u, v]))
        )


# Factor universes wider than one machine word fall back to the reference path.
_MAX_BITS = 64


def all_best_witnesses(
    g: SocialGraph, mean: MeanKind = MeanKind.ARITHMETIC
) -> list[tuple[int, int, WitnessResult]]:
    """Same result as :func:`all_best_witnesses_reference`, via :class:`WitnessTable`."""
    if len({f for _, _, a in g.edges() for f in a.factors}) > _MAX_BITS:
        return all_best_witnesses_reference(g, mean)
    table = WitnessTable(g, mean)
    us, vs = table.candidate_pairs()
    return [(u, v, table.result(u, v)) for u, v in zip(us.tolist(), vs.tolist())]

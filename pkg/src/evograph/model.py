"""Factor-annotated undirected social graph."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Base class for structural violations of a :class:`SocialGraph`."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class UnknownNodeError(GraphError):
    pass


class MissingEdgeError(GraphError):
    pass


@dataclass(frozen=True)
class EdgeAttr:
    """Factor set and cumulative score carried by one friendship edge.

    ``factors`` is stored as a frozenset of positive ints and ``score`` as a
    float so that edges derived during evolution can carry fractional values.
    """

    factors: frozenset[int]
    score: float

    def __init__(self, factors: Iterable[int], score: float) -> None:
        fs = frozenset(int(f) for f in factors)
        if not fs:
            raise GraphError("edge factor set must be nonempty")
        if any(f < 1 for f in fs):
            raise GraphError(f"factor ids must be positive integers: {sorted(fs)}")
        score = float(score)
        if not score >= 0.0:
            raise GraphError(f"edge score must be nonnegative, got {score}")
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "score", score)

    def sorted_factors(self) -> list[int]:
        return sorted(self.factors)


def canonical(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class SocialGraph:
    """Undirected simple graph over dense node ids ``0..node_count-1``.

    Both adjacency directions hold the *same* :class:`EdgeAttr` object.
    Nodes and edges can only be added.
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, node_count: int = 0) -> None:
        if node_count < 0:
            raise GraphError(f"node_count must be nonnegative, got {node_count}")
        self._adj: list[dict[int, EdgeAttr]] = [{} for _ in range(node_count)]
        self._m = 0

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def nodes(self) -> range:
        return range(len(self._adj))

    def add_node(self) -> int:
        self._adj.append({})
        return len(self._adj) - 1

    def add_nodes(self, count: int) -> list[int]:
        return [self.add_node() for _ in range(count)]

    def _check(self, u: int) -> None:
        if not 0 <= u < len(self._adj):
            raise UnknownNodeError(f"unknown node {u} (node_count={len(self._adj)})")

    def add_edge(self, u: int, v: int, attr: EdgeAttr) -> None:
        if u == v:
            raise SelfLoopError(f"self-loop at node {u}")
        self._check(u)
        self._check(v)
        if v in self._adj[u]:
            raise DuplicateEdgeError(f"edge {canonical(u, v)} already present")
        if not isinstance(attr, EdgeAttr):
            raise TypeError("attr must be an EdgeAttr")
        self._adj[u][v] = attr
        self._adj[v][u] = attr
        self._m += 1

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def edge_attr(self, u: int, v: int) -> EdgeAttr:
        self._check(u)
        self._check(v)
        try:
            return self._adj[u][v]
        except KeyError:
            raise MissingEdgeError(f"no edge {canonical(u, v)}") from None

    def neighbors(self, u: int) -> list[int]:
        self._check(u)
        return sorted(self._adj[u])

    def adjacency(self, u: int) -> dict[int, EdgeAttr]:
        """Read-only view of ``u``'s neighbor map.  Do not mutate."""
        return self._adj[u]

    def degree(self, u: int) -> int:
        self._check(u)
        return len(self._adj[u])

    def common_neighbors(self, u: int, v: int) -> list[int]:
        if u == v:
            raise GraphError("common_neighbors needs two distinct nodes")
        self._check(u)
        self._check(v)
        a, b = self._adj[u], self._adj[v]
        if len(a) > len(b):
            a, b = b, a
        return sorted(w for w in a if w in b)

    def edges(self) -> Iterator[tuple[int, int, EdgeAttr]]:
        """Edges as ``(u, v, attr)`` with ``u < v``, sorted by ``(u, v)``."""
        for u, nbrs in enumerate(self._adj):
            for v in sorted(nbrs):
                if v > u:
                    yield u, v, nbrs[v]

    def pair_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nbrs in enumerate(self._adj) for v in nbrs if u < v}

    def edge_map(self) -> dict[tuple[int, int], EdgeAttr]:
        return {(u, v): a for u, v, a in self.edges()}

    def copy(self) -> "SocialGraph":
        g = SocialGraph.__new__(SocialGraph)
        g._adj = [dict(nbrs) for nbrs in self._adj]
        g._m = self._m
        return g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SocialGraph):
            return NotImplemented
        return self.node_count == other.node_count and self._adj == other._adj

    def __repr__(self) -> str:
        return f"SocialGraph(node_count={self.node_count}, edge_count={self.edge_count})"

    @classmethod
    def from_edges(
        cls, node_count: int, edges: Iterable[tuple[int, int, EdgeAttr]]
    ) -> "SocialGraph":
        g = cls(node_count)
        for u, v, attr in edges:
            g.add_edge(u, v, attr)
        return g

"""Graph statistics used to judge community formation.

Community structure is measured by Newman modularity of a partition found
by greedy agglomeration (Clauset-Newman-Moore): start from singletons and
repeatedly merge the connected pair of communities with the largest
modularity gain, stopping when no merge gains.  Gains are compared as exact
integers ``2m * e_ab - d_a * d_b``, where ``e_ab`` counts edges between the two
communities and ``d_x`` is a community's degree sum; ties go to the
lexicographically smallest ``(label_a, label_b)``.  A community's label is
its smallest node id.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import asdict, dataclass, field

from .model import SocialGraph


class MetricsError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """``assignment[u]`` is the community label of node ``u``."""

    assignment: tuple[int, ...]

    @classmethod
    def from_groups(cls, n: int, groups: list[list[int]]) -> "Partition":
        """Labels ``0, 1, ...`` in order of each group's smallest member."""
        out = [-1] * n
        for label, grp in enumerate(sorted((sorted(g) for g in groups), key=lambda g: g[0])):
            for u in grp:
                out[u] = label
        if -1 in out:
            raise MetricsError("groups do not cover every node")
        return cls(tuple(out))

    @property
    def community_count(self) -> int:
        return len(set(self.assignment))

    def groups(self) -> list[list[int]]:
        by_label: dict[int, list[int]] = {}
        for u, c in enumerate(self.assignment):
            by_label.setdefault(c, []).append(u)
        return [by_label[c] for c in sorted(by_label)]


def density(g: SocialGraph) -> float:
    n = g.node_count
    if n < 2:
        raise MetricsError(f"density undefined for fewer than 2 nodes (n={n})")
    return g.edge_count / (n * (n - 1) / 2)


def local_clustering(g: SocialGraph, u: int) -> float:
    nbrs = g.adjacency(u)
    d = len(nbrs)
    if d < 2:
        return 0.0
    nset = nbrs.keys()
    links = sum(len(nset & g.adjacency(v).keys()) for v in nbrs) // 2
    return links / (d * (d - 1) / 2)


def avg_clustering(g: SocialGraph) -> float:
    n = g.node_count
    if n == 0:
        return 0.0
    return sum(local_clustering(g, u) for u in range(n)) / n


def connected_components(g: SocialGraph) -> tuple[int, list[int]]:
    """Component count and per-node labels, numbered by smallest member."""
    labels = [-1] * g.node_count
    count = 0
    for start in g.nodes():
        if labels[start] != -1:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.adjacency(u):
                if labels[v] == -1:
                    labels[v] = count
                    stack.append(v)
        count += 1
    return count, labels


def modularity(g: SocialGraph, part: Partition) -> float:
    m = g.edge_count
    if m == 0:
        raise MetricsError("modularity undefined for a graph without edges")
    if len(part.assignment) != g.node_count:
        raise MetricsError("partition size does not match node count")
    inner: Counter[int] = Counter()
    deg: Counter[int] = Counter()
    for u, v, _ in g.edges():
        cu = part.assignment[u]
        if cu == part.assignment[v]:
            inner[cu] += 1
    for u in g.nodes():
        deg[part.assignment[u]] += g.degree(u)
    return sum(inner[c] / m - (deg[c] / (2 * m)) ** 2 for c in deg)


def greedy_communities(g: SocialGraph) -> Partition:
    n = g.node_count
    m = g.edge_count
    if m == 0:
        return Partition(tuple(range(n)))
    two_m = 2 * m
    degsum = {u: g.degree(u) for u in range(n)}
    between: dict[int, dict[int, int]] = {u: {v: 1 for v in g.adjacency(u)} for u in range(n)}
    members: dict[int, list[int]] = {u: [u] for u in range(n)}

    def gain(a: int, b: int) -> int:
        return two_m * between[a][b] - degsum[a] * degsum[b]

    heap = [(-gain(u, v), u, v) for u, v, _ in g.edges()]
    heapq.heapify(heap)
    while heap:
        neg, a, b = heapq.heappop(heap)
        if a not in members or b not in members or b not in between[a]:
            continue
        current = gain(a, b)
        if current != -neg:
            continue
        if current <= 0:
            break
        # a < b always; the merged community keeps label a.
        for c, e in between.pop(b).items():
            del between[c][b]
            if c != a:
                between[a][c] = between[a].get(c, 0) + e
                between[c][a] = between[a][c]
        degsum[a] += degsum.pop(b)
        members[a].extend(members.pop(b))
        for c in between[a]:
            lo, hi = (a, c) if a < c else (c, a)
            heapq.heappush(heap, (-gain(lo, hi), lo, hi))
    return Partition.from_groups(n, list(members.values()))


@dataclass
class MetricsReport:
    node_count: int
    edge_count: int
    density: float
    avg_clustering: float
    component_count: int
    degree_histogram: dict[int, int] = field(default_factory=dict)
    modularity: float = 0.0
    community_count: int = 0
    truncated: bool = False

    def to_text(self) -> str:
        lines = []
        for key, value in asdict(self).items():
            if key == "degree_histogram":
                value = ";".join(f"{d}:{c}" for d, c in sorted(value.items()))
            elif isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, float):
                value = f"{value:.6f}"
            lines.append(f"{key}={value}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["degree_histogram"] = {str(k): v for k, v in sorted(self.degree_histogram.items())}
        return d


def compute_metrics(g: SocialGraph) -> MetricsReport:
    """Full report; modularity is 0 and communities are singletons when ``m = 0``."""
    comps, _ = connected_components(g)
    part = greedy_communities(g)
    return MetricsReport(
        node_count=g.node_count,
        edge_count=g.edge_count,
        density=density(g),
        avg_clustering=avg_clustering(g),
        component_count=comps,
        degree_histogram=dict(sorted(Counter(g.degree(u) for u in g.nodes()).items())),
        modularity=modularity(g, part) if g.edge_count else 0.0,
        community_count=part.community_count,
    )

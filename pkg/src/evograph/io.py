"""Serialization: CSV edge lists, GEXF 1.2 (Gephi), DOT, and JSON summaries.

CSV format (UTF-8, LF)::

    #nodes=<n>            only when nodes beyond the largest edge endpoint exist
    u,v,score,factors
    0,1,9,2;3

Rows are sorted by ``(u, v)`` with ``u < v``; factors ascending and
``;``-joined.  Scores are written in shortest round-trip form with integral
values printed without a decimal point, so import restores them exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any
from xml.sax.saxutils import quoteattr

from .engine import EvolutionTrace
from .metrics import MetricsReport
from .model import EdgeAttr, GraphError, SocialGraph

CSV_HEADER = "u,v,score,factors"
GEXF_NS = "http://www.gexf.net/1.2draft"


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_score(x: float) -> str:
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _factor_str(attr: EdgeAttr) -> str:
    return ";".join(str(f) for f in attr.sorted_factors())


def export_edge_list(g: SocialGraph) -> str:
    lines = []
    max_id = max((v for _, v, _ in g.edges()), default=-1)
    if g.node_count > max_id + 1:
        lines.append(f"#nodes={g.node_count}")
    lines.append(CSV_HEADER)
    for u, v, attr in g.edges():
        lines.append(f"{u},{v},{format_score(attr.score)},{_factor_str(attr)}")
    return "\n".join(lines) + "\n"


def _parse_int(text: str, lineno: int, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise EdgeListParseError(lineno, f"bad {what} {text!r}") from None
    if value < 0:
        raise EdgeListParseError(lineno, f"negative {what} {value}")
    return value


def import_edge_list(text: str) -> SocialGraph:
    declared: int | None = None
    rows: list[tuple[int, int, EdgeAttr]] = []
    seen: set[tuple[int, int]] = set()
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            if key.strip() == "nodes":
                if declared is not None:
                    raise EdgeListParseError(lineno, "repeated #nodes line")
                declared = _parse_int(value.strip(), lineno, "node count")
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise EdgeListParseError(lineno, f"expected header {CSV_HEADER!r}")
            header_seen = True
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise EdgeListParseError(lineno, f"expected 4 fields, got {len(parts)}")
        u = _parse_int(parts[0], lineno, "node id")
        v = _parse_int(parts[1], lineno, "node id")
        if u == v:
            raise EdgeListParseError(lineno, f"self-loop at node {u}")
        try:
            score = float(parts[2])
        except ValueError:
            raise EdgeListParseError(lineno, f"bad score {parts[2]!r}") from None
        if not parts[3].strip():
            raise EdgeListParseError(lineno, "empty factor list")
        factors = [_parse_int(f, lineno, "factor") for f in parts[3].split(";")]
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListParseError(lineno, f"duplicate edge {key}")
        seen.add(key)
        try:
            attr = EdgeAttr(factors, score)
        except GraphError as exc:
            raise EdgeListParseError(lineno, str(exc)) from None
        rows.append((key[0], key[1], attr))
    if not header_seen:
        raise EdgeListParseError(1, f"missing header {CSV_HEADER!r}")
    n = max((v for _, v, _ in rows), default=-1) + 1
    if declared is not None:
        if declared < n:
            raise EdgeListParseError(1, f"#nodes={declared} but edges reference node {n - 1}")
        n = declared
    return SocialGraph.from_edges(n, rows)


def export_gexf(obj: SocialGraph | EvolutionTrace) -> str:
    """GEXF 1.2 document.

    A graph exports as a static graph.  A trace exports its final graph as a
    dynamic graph whose node and edge ``start`` is the first snapshot index
    containing them (the sweep index for a plain evolve run).
    """
    if isinstance(obj, EvolutionTrace):
        g = obj.final
        node_start, edge_start = obj.birth_index()
        mode = "dynamic"
    else:
        g = obj
        node_start, edge_start = {}, {}
        mode = "static"
    out = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append(f'<gexf xmlns="{GEXF_NS}" version="1.2">')
    out.append('  <meta><creator>evograph</creator></meta>')
    graph_attrs = f'mode="{mode}" defaultedgetype="undirected"'
    if mode == "dynamic":
        graph_attrs += ' timeformat="integer"'
    out.append(f"  <graph {graph_attrs}>")
    out.append('    <attributes class="edge" mode="static">')
    out.append('      <attribute id="score" title="score" type="double"/>')
    out.append('      <attribute id="factors" title="factors" type="string"/>')
    out.append("    </attributes>")
    out.append("    <nodes>")
    for u in g.nodes():
        start = f' start="{node_start[u]}"' if mode == "dynamic" else ""
        out.append(f'      <node id="{u}" label="{u}"{start}/>')
    out.append("    </nodes>")
    out.append("    <edges>")
    for i, (u, v, attr) in enumerate(g.edges()):
        start = f' start="{edge_start[(u, v)]}"' if mode == "dynamic" else ""
        out.append(f'      <edge id="{i}" source="{u}" target="{v}"{start}>')
        out.append("        <attvalues>")
        out.append(f'          <attvalue for="score" value="{format_score(attr.score)}"/>')
        out.append(f'          <attvalue for="factors" value={quoteattr(_factor_str(attr))}/>')
        out.append("        </attvalues>")
        out.append("      </edge>")
    out.append("    </edges>")
    out.append("  </graph>")
    out.append("</gexf>")
    return "\n".join(out) + "\n"


def export_dot(g: SocialGraph) -> str:
    lines = ["graph {"]
    for u in g.nodes():
        lines.append(f"  {u};")
    for u, v, attr in g.edges():
        lines.append(f'  {u} -- {v} [label="{format_score(attr.score)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


EXPORTERS = {
    "csv": export_edge_list,
    "gexf": export_gexf,
    "dot": export_dot,
}


def trace_summary(trace: EvolutionTrace) -> dict[str, Any]:
    """Per-sweep counts and run flags as plain JSON-ready data."""
    return {
        "truncated": trace.truncated,
        "sweeps": trace.sweep_count,
        "phase_starts": list(trace.phase_starts),
        "node_counts": [s.node_count for s in trace.snapshots],
        "edge_counts": [s.edge_count for s in trace.snapshots],
        "reports": [
            {
                "sweep_index": r.sweep_index,
                "candidates_evaluated": r.candidates_evaluated,
                "added": len(r.added),
                "rejected_by_coin": len(r.rejected_by_coin),
                "below_threshold": r.below_threshold,
            }
            for r in trace.reports
        ],
        "growth": [
            {"outer_step": e.outer_step, "new_nodes": len(e.new_nodes), "new_edges": len(e.new_edges)}
            for e in trace.growth
        ],
    }


def metrics_json(report: MetricsReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str | os.PathLike[str], text: str) -> None:
    """Write ``text`` to a temp file beside ``path``, then rename over it."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def read_graph(path: str | os.PathLike[str]) -> SocialGraph:
    return import_edge_list(Path(path).read_text(encoding="utf-8"))

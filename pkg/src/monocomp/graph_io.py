"""Text format for (colored) graphs.

Line 1 is ``n m r``; then ``m`` lines ``u v c`` with ``u < v``, 1-based
colors and edges in sorted order.  ``r = 0`` marks an uncolored graph whose
edge lines are just ``u v``.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import GraphFormatError
from .graph_core import EdgeColoring, Graph


def format_graph(G: Graph, C: EdgeColoring | None = None) -> str:
    if C is not None:
        C.check_matches(G)
        rows = np.column_stack([G.u, G.v, C.colors])
        header = f"{G.n} {G.m} {C.r}\n"
    else:
        rows = np.column_stack([G.u, G.v])
        header = f"{G.n} {G.m} 0\n"
    body = "".join(" ".join(map(str, row)) + "\n" for row in rows.tolist())
    return header + body


def write_graph(path: str | Path, G: Graph, C: EdgeColoring | None = None) -> None:
    Path(path).write_text(format_graph(G, C))


def _ints(line: str, count: int, lineno: int) -> list[int]:
    fields = line.split()
    if len(fields) != count:
        raise GraphFormatError(f"expected {count} integers, found {len(fields)}", lineno)
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"non-integer field in {line.strip()!r}", lineno) from None


def parse_graph(text: str) -> tuple[Graph, EdgeColoring | None]:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise GraphFormatError("empty file", 1)
    n, m, r = _ints(lines[0], 3, 1)
    if n < 0 or m < 0 or r < 0:
        raise GraphFormatError("header values must be nonnegative", 1)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges but {len(lines) - 1} edge lines follow", 1)
    width = 3 if r > 0 else 2
    us = np.empty(m, dtype=np.int64)
    vs = np.empty(m, dtype=np.int64)
    cs = np.empty(m, dtype=np.int64)
    prev = (-1, -1)
    for i, line in enumerate(lines[1:]):
        lineno = i + 2
        vals = _ints(line, width, lineno)
        u, v = vals[0], vals[1]
        if not 0 <= u < v < n:
            raise GraphFormatError(f"edge ({u}, {v}) must satisfy 0 <= u < v < {n}", lineno)
        if (u, v) == prev:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        if (u, v) < prev:
            raise GraphFormatError(f"edge ({u}, {v}) is out of sorted order", lineno)
        if r > 0:
            if not 1 <= vals[2] <= r:
                raise GraphFormatError(f"color {vals[2]} outside 1..{r}", lineno)
            cs[i] = vals[2]
        us[i], vs[i] = u, v
        prev = (u, v)
    G = Graph(n, us, vs)
    return G, (EdgeColoring(r, cs) if r > 0 else None)


def read_graph(path: str | Path) -> tuple[Graph, EdgeColoring | None]:
    return parse_graph(Path(path).read_text())

"""Compiled union-find kernels over flat edge arrays.

Edges are given as parallel arrays ``us``/``vs`` with a per-edge color array;
every kernel looks only at the edges carrying the requested color.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _union_color(n, us, vs, colors, color):
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    for e in range(us.shape[0]):
        if colors[e] == color:
            a = _find(parent, us[e])
            b = _find(parent, vs[e])
            if a != b:
                if size[a] < size[b]:
                    a, b = b, a
                parent[b] = a
                size[a] += size[b]
    return parent


@njit(cache=True)
def color_components(n, us, vs, colors, color):
    """Components of one color class.

    Returns ``(edges, verts, minv, label)`` where the first three are indexed
    by component (ordered by smallest vertex) and ``label[x]`` is the component
    index of vertex ``x`` or -1 when no edge of this color touches it.
    """
    parent = _union_color(n, us, vs, colors, color)
    ecount = np.zeros(n, dtype=np.int64)
    touched = np.zeros(n, dtype=np.bool_)
    for e in range(us.shape[0]):
        if colors[e] == color:
            ecount[_find(parent, us[e])] += 1
            touched[us[e]] = True
            touched[vs[e]] = True
    label = np.full(n, -1, dtype=np.int64)
    slot = np.full(n, -1, dtype=np.int64)
    k = 0
    for x in range(n):
        if touched[x]:
            r = _find(parent, x)
            if slot[r] < 0:
                slot[r] = k
                k += 1
            label[x] = slot[r]
    edges = np.zeros(k, dtype=np.int64)
    verts = np.zeros(k, dtype=np.int64)
    minv = np.full(k, n, dtype=np.int64)
    for x in range(n):
        c = label[x]
        if c >= 0:
            verts[c] += 1
            if x < minv[c]:
                minv[c] = x
            edges[c] = ecount[_find(parent, x)]
    return edges, verts, minv, label


@njit(cache=True)
def _nonzero(counts, lo, hi):
    k = 0
    for x in range(lo, hi):
        if counts[x] > 0:
            k += 1
    out = np.empty(k, dtype=np.int64)
    k = 0
    for x in range(lo, hi):
        if counts[x] > 0:
            out[k] = counts[x]
            k += 1
    return out


@njit(cache=True)
def color_component_edges(n, us, vs, colors, color):
    """Edge counts of the components of one color class (unordered)."""
    parent = _union_color(n, us, vs, colors, color)
    for x in range(n):
        parent[x] = _find(parent, x)
    ecount = np.zeros(n, dtype=np.int64)
    for e in range(us.shape[0]):
        if colors[e] == color:
            ecount[parent[us[e]]] += 1
    return _nonzero(ecount, 0, n)


@njit(cache=True)
def two_color_component_edges(n, us, vs, colors, a, b):
    """:func:`color_component_edges` for colors ``a`` and ``b`` in one edge scan."""
    parent = np.arange(2 * n)
    size = np.ones(2 * n, dtype=np.int64)
    for e in range(us.shape[0]):
        c = colors[e]
        if c == a or c == b:
            off = 0 if c == a else n
            x = _find(parent, us[e] + off)
            y = _find(parent, vs[e] + off)
            if x != y:
                if size[x] < size[y]:
                    x, y = y, x
                parent[y] = x
                size[x] += size[y]
    for x in range(2 * n):
        parent[x] = _find(parent, x)
    ecount = np.zeros(2 * n, dtype=np.int64)
    for e in range(us.shape[0]):
        c = colors[e]
        if c == a:
            ecount[parent[us[e]]] += 1
        elif c == b:
            ecount[parent[us[e] + n]] += 1
    return _nonzero(ecount, 0, n), _nonzero(ecount, n, 2 * n)


@njit(cache=True)
def max_component_edges(n, us, vs, colors, r):
    """Largest monochromatic component edge count over colors 1..r in one pass."""
    parent = np.arange(n * r)
    size = np.ones(n * r, dtype=np.int64)
    m = us.shape[0]
    for e in range(m):
        off = (colors[e] - 1) * n
        a = _find(parent, us[e] + off)
        b = _find(parent, vs[e] + off)
        if a != b:
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    ecount = np.zeros(n * r, dtype=np.int64)
    best = 0
    for e in range(m):
        root = _find(parent, us[e] + (colors[e] - 1) * n)
        ecount[root] += 1
        if ecount[root] > best:
            best = ecount[root]
    return best


# -- incremental per-color components for single-edge recolor moves -----------
#
# State per color c (rows of 2-d arrays):
#   label[c, x]  representative vertex of x's c-component, -1 if deg[c, x] == 0
#   cedges[c, v] edge count of the component represented by v (0 otherwise)
#   deg[c, x]    number of c-colored edges at x
# ``mark``/``stamp`` are scratch space for the two-sided search.


@njit(cache=True)
def csr_adjacency(n, us, vs):
    m = us.shape[0]
    indptr = np.zeros(n + 1, dtype=np.int64)
    for e in range(m):
        indptr[us[e] + 1] += 1
        indptr[vs[e] + 1] += 1
    for x in range(n):
        indptr[x + 1] += indptr[x]
    fill = indptr[:-1].copy()
    nbr = np.empty(2 * m, dtype=np.int64)
    eid = np.empty(2 * m, dtype=np.int64)
    for e in range(m):
        a, b = us[e], vs[e]
        nbr[fill[a]] = b
        eid[fill[a]] = e
        fill[a] += 1
        nbr[fill[b]] = a
        eid[fill[b]] = e
        fill[b] += 1
    return indptr, nbr, eid


@njit(cache=True)
def inc_init(n, us, vs, colors, r):
    label = np.full((r + 1, n), -1, dtype=np.int64)
    cedges = np.zeros((r + 1, n), dtype=np.int64)
    deg = np.zeros((r + 1, n), dtype=np.int64)
    for c in range(1, r + 1):
        parent = _union_color(n, us, vs, colors, c)
        for e in range(us.shape[0]):
            if colors[e] == c:
                deg[c, us[e]] += 1
                deg[c, vs[e]] += 1
                cedges[c, _find(parent, us[e])] += 1
        for x in range(n):
            if deg[c, x] > 0:
                label[c, x] = _find(parent, x)
    return label, cedges, deg


@njit(cache=True)
def _relabel(label_row, old, new, n):
    for x in range(n):
        if label_row[x] == old:
            label_row[x] = new


@njit(cache=True)
def _split_search(indptr, nbr, eid, colors, c, x, y, mark, stamp, queue):
    """Two-sided BFS in color c from x and y, alternating single expansions.

    Returns (connected, side, lo, hi): when not connected, ``queue[lo:hi]``
    holds the exhausted side's vertices and ``side`` is 0 for x's side, 1
    for y's side.
    """
    sa = 2 * stamp
    sb = 2 * stamp + 1
    n = mark.shape[0]
    # side a fills queue upward from 0, side b downward from n-1
    qa_head, qa_tail = 0, 1
    qb_head, qb_tail = n - 1, n - 2
    queue[0] = x
    queue[n - 1] = y
    mark[x] = sa
    mark[y] = sb
    while True:
        if qa_head == qa_tail:
            return False, 0, 0, qa_tail
        if qb_head == qb_tail:
            return False, 1, qb_tail + 1, n
        v = queue[qa_head]
        qa_head += 1
        for j in range(indptr[v], indptr[v + 1]):
            if colors[eid[j]] == c:
                w = nbr[j]
                if mark[w] == sb:
                    return True, 0, 0, 0
                if mark[w] != sa:
                    mark[w] = sa
                    queue[qa_tail] = w
                    qa_tail += 1
        v = queue[qb_head]
        qb_head -= 1
        for j in range(indptr[v], indptr[v + 1]):
            if colors[eid[j]] == c:
                w = nbr[j]
                if mark[w] == sa:
                    return True, 0, 0, 0
                if mark[w] != sb:
                    mark[w] = sb
                    queue[qb_tail] = w
                    qb_tail -= 1


@njit(cache=True)
def _row_max(row):
    best = 0
    for v in range(row.shape[0]):
        if row[v] > best:
            best = row[v]
    return best


@njit(cache=True)
def inc_recolor(indptr, nbr, eid, us, vs, colors, label, cedges, deg, maxes, mark, queue, stamp, e, new):
    """Recolor edge e to ``new`` and update both touched colors; returns the largest component."""
    n = mark.shape[0]
    old = colors[e]
    x, y = us[e], vs[e]
    colors[e] = new

    # lose the edge from color ``old``
    rep = label[old, x]
    cedges[old, rep] -= 1
    deg[old, x] -= 1
    deg[old, y] -= 1
    dx, dy = deg[old, x], deg[old, y]
    if dx == 0 and dy == 0:
        label[old, x] = -1
        label[old, y] = -1
    elif dx == 0 or dy == 0:
        gone = x if dx == 0 else y
        keep = y if dx == 0 else x
        label[old, gone] = -1
        if rep == gone:
            cedges[old, keep] = cedges[old, gone]
            cedges[old, gone] = 0
            _relabel(label[old], gone, keep, n)
    else:
        connected, side, lo, hi = _split_search(indptr, nbr, eid, colors, old, x, y, mark, stamp, queue)
        if not connected:
            half = 0
            rep_in_part = False
            for i in range(lo, hi):
                half += deg[old, queue[i]]
                if queue[i] == rep:
                    rep_in_part = True
            part_edges = half // 2
            rest = cedges[old, rep] - part_edges
            if rep_in_part:
                # the other side needs a fresh representative
                other = y if side == 0 else x
                for i in range(lo, hi):
                    label[old, queue[i]] = -2
                _relabel(label[old], rep, other, n)
                _relabel(label[old], -2, rep, n)
                cedges[old, rep] = part_edges
                cedges[old, other] = rest
            else:
                fresh = queue[lo]
                for i in range(lo, hi):
                    label[old, queue[i]] = fresh
                cedges[old, fresh] = part_edges
                cedges[old, rep] = rest

    # gain the edge in color ``new``
    lx, ly = label[new, x], label[new, y]
    deg[new, x] += 1
    deg[new, y] += 1
    if lx < 0 and ly < 0:
        label[new, x] = x
        label[new, y] = x
        cedges[new, x] = 1
    elif lx < 0:
        label[new, x] = ly
        cedges[new, ly] += 1
    elif ly < 0:
        label[new, y] = lx
        cedges[new, lx] += 1
    elif lx == ly:
        cedges[new, lx] += 1
    else:
        if cedges[new, lx] < cedges[new, ly]:
            lx, ly = ly, lx
        _relabel(label[new], ly, lx, n)
        cedges[new, lx] += cedges[new, ly] + 1
        cedges[new, ly] = 0

    maxes[old] = _row_max(cedges[old])
    maxes[new] = _row_max(cedges[new])
    return _row_max(maxes)

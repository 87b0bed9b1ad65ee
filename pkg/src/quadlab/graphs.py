"""Small graph routines over sets of grid cells.

Cells are ``(col, row)`` tuples. Two tree tests live here on purpose, one
by depth-first search and one by union-find plus edge counting, so that
callers can cross-check them.
"""

from __future__ import annotations

from typing import Iterable

from .subdivision import GridCoord, row_major

SIDE_STEPS = ((0, -1), (-1, 0), (1, 0), (0, 1))  # (row-1), (col-1), (col+1), (row+1)
DIAGONAL_STEPS = ((-1, -1), (1, -1), (-1, 1), (1, 1))  # row-major


def side_neighbours(c: GridCoord, cells) -> list[GridCoord]:
    col, row = c
    return [(col + dc, row + dr) for dc, dr in SIDE_STEPS if (col + dc, row + dr) in cells]


def side_edges(cells) -> list[tuple[GridCoord, GridCoord]]:
    """Each side-adjacent pair once, ordered row-major by the first cell."""
    edges = []
    for c in sorted(cells, key=row_major):
        col, row = c
        for nb in ((col + 1, row), (col, row + 1)):
            if nb in cells:
                edges.append((c, nb))
    return edges


def vertex_edges(cells) -> list[tuple[GridCoord, GridCoord]]:
    edges = []
    for c in sorted(cells, key=row_major):
        col, row = c
        for nb in ((col + 1, row + 1), (col - 1, row + 1)):
            if nb in cells:
                edges.append((c, nb))
    return edges


class UnionFind:
    """Union-find keyed by arbitrary hashables; the root is the row-major minimum."""

    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if row_major(rb) < row_major(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return {r: sorted(v, key=row_major) for r, v in out.items()}


def components(cells, edges) -> dict[GridCoord, list[GridCoord]]:
    uf = UnionFind(cells)
    for a, b in edges:
        uf.union(a, b)
    return dict(sorted(uf.groups().items(), key=lambda kv: row_major(kv[0])))


def tree_by_dfs(cells, edges) -> bool:
    """Connected and no cycle, found by iterative DFS over the edge list."""
    cells = set(cells)
    if not cells:
        return False
    adj: dict = {c: [] for c in cells}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = min(cells, key=row_major)
    seen = {start}
    stack = [(start, None)]
    while stack:
        node, parent = stack.pop()
        for nb in adj[node]:
            if nb == parent:
                continue
            if nb in seen:
                return False
            seen.add(nb)
            stack.append((nb, node))
    return len(seen) == len(cells)


def tree_by_counting(cells, edges) -> bool:
    """One union-find component and |E| = |V| - 1."""
    cells = list(cells)
    if not cells:
        return False
    return len(components(cells, edges)) == 1 and len(edges) == len(cells) - 1


def find_cycle(cells, edges) -> list[GridCoord] | None:
    """Some simple cycle of the graph, or None if it is a forest."""
    adj: dict = {c: [] for c in cells}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    parent: dict = {}
    for root in sorted(adj, key=row_major):
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            node = stack.pop()
            for nb in adj[node]:
                if nb == parent[node]:
                    continue
                if nb in parent:
                    # walk both ends up to their common ancestor
                    path_a = [node]
                    while parent[path_a[-1]] is not None:
                        path_a.append(parent[path_a[-1]])
                    path_b = [nb]
                    while parent[path_b[-1]] is not None:
                        path_b.append(parent[path_b[-1]])
                    common = set(path_a) & set(path_b)
                    cut_a = next(i for i, x in enumerate(path_a) if x in common)
                    cut_b = path_b.index(path_a[cut_a])
                    return path_a[:cut_a + 1] + path_b[:cut_b][::-1]
                parent[nb] = node
                stack.append(nb)
    return None

"""Pure-Python fallback for the breadth-first-search kernel.

Mirrors the compiled kernel exactly: level-synchronous expansion, per-level
sorting, least-id parents, optional depth cap.  Works on the adjacency-list
form of a graph rather than CSR because plain lists are what pure Python
iterates fastest.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def bfs_adj(
    adj: Sequence[Sequence[int]],
    sources: Iterable[int],
    cap: int,
) -> tuple[list[int], list[int], int]:
    """Multi-source BFS over an adjacency list.

    Returns ``(dist, parent, reached)`` with -1 marking unvisited entries,
    least-id parents, and ``reached`` counting visited vertices.  ``cap < 0``
    disables the depth limit; otherwise vertices beyond distance ``cap``
    stay unvisited.
    """
    n = len(adj)
    dist = [-1] * n
    parent = [-1] * n
    cur: list[int] = []
    for s in sorted(set(sources)):
        if dist[s] < 0:
            dist[s] = 0
            cur.append(s)
    reached = len(cur)
    d = 0
    while cur and (cap < 0 or d < cap):
        nxt: list[int] = []
        for u in cur:
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = d + 1
                    parent[w] = u
                    nxt.append(w)
        nxt.sort()
        cur = nxt
        d += 1
        reached += len(nxt)
    return dist, parent, reached

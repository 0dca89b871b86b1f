"""Backend selection for the breadth-first-search kernel.

The compiled extension is preferred when it imports cleanly.  Setting the
``PATHECC_PURE`` environment variable to a non-empty value forces the
pure-Python fallback instead.  ``BACKEND`` records which one is active.
Both backends honour the same contract, so everything above this module
is backend-agnostic.
"""

from __future__ import annotations

import os
from typing import Iterable

import numpy as np

from . import _kernels_py

_speedups = None
if not os.environ.get("PATHECC_PURE"):
    try:
        from . import _speedups  # type: ignore[no-redef]
    except ImportError:
        _speedups = None

BACKEND = "compiled" if _speedups is not None else "pure"


def backend_name() -> str:
    """Which BFS kernel this process is using: "compiled" or "pure"."""
    return BACKEND


def bfs(graph, sources: Iterable[int], cap: int = -1):
    """Multi-source BFS on ``graph``, optionally depth-capped.

    Returns ``(dist, parent, reached)``: two int32 arrays with -1 marking
    unvisited vertices plus the count of visited vertices.  Parents are the
    least-id predecessor on the previous BFS level, so shortest paths read
    off ``parent`` are deterministic.  ``cap < 0`` means unlimited depth;
    ``cap = c`` leaves vertices farther than ``c`` unvisited.
    """
    srcs = sorted(set(sources))
    if _speedups is not None:
        indptr, indices = graph.csr()
        n = graph.n
        dist = np.empty(n, dtype=np.int32)
        parent = np.empty(n, dtype=np.int32)
        src = np.asarray(srcs, dtype=np.int32)
        reached = _speedups.bfs_csr(indptr, indices, src, cap, dist, parent)
        return dist, parent, reached
    dist_l, parent_l, reached = _kernels_py.bfs_adj(graph.adj, srcs, cap)
    return (
        np.array(dist_l, dtype=np.int32),
        np.array(parent_l, dtype=np.int32),
        reached,
    )

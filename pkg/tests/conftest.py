"""Shared test helpers plus the acceptance-line reporter.

Acceptance tests call record_criterion(); the terminal-summary hook then
prints one PASS/FAIL line per criterion after the run, so the pytest
output carries the per-criterion verdicts even without -s.
"""

from __future__ import annotations

from pathecc import Graph
from pathecc.oracles import CounterRng, _pair_edges_by_threshold, _threshold

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


def record_criterion(number: int, label: str, ok: bool) -> None:
    verdict = "PASS" if ok else "FAIL"
    _ACCEPTANCE_LINES.append((number, f"ACCEPTANCE {number} {label}: {verdict}"))


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)


def rand_graph(seed: int, n: int, p: float) -> Graph:
    """Small deterministic G(n, p) sample; connectivity not enforced."""
    rng = CounterRng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = _pair_edges_by_threshold(n, _threshold(p), rng, 0, pairs)
    return Graph.from_edges(n, edges)

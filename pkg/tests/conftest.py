import math

import numpy as np
import pytest

from tbspanner.graph import Graph

# 20-node reference tree whose nested sequence has levels of 20, 10, 3 and 1 nodes.
SAMPLE_EDGES = [
    (5, 6), (6, 0), (0, 9), (9, 12), (12, 11), (1, 0), (1, 7), (7, 2), (2, 4), (2, 3),
    (3, 8), (12, 10), (5, 13), (5, 14), (14, 15), (18, 17), (17, 19), (17, 16), (16, 7),
]
SAMPLE_T1 = {0, 1, 2, 5, 6, 7, 9, 12, 16, 17}
SAMPLE_T2 = {0, 1, 7}
SAMPLE_T3 = {1}


@pytest.fixture
def sample_tree():
    return Graph(20, SAMPLE_EDGES)


def floyd_warshall(g: Graph) -> np.ndarray:
    """Independent all-pairs oracle, plain triple loop."""
    n = g.n
    d = [[0 if i == j else math.inf for j in range(n)] for i in range(n)]
    for u, v in g.edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return np.array(d, dtype=float)


def brute_radius(dist: np.ndarray, members) -> float:
    return min(max(dist[c][v] for v in members) for c in range(len(dist)))


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

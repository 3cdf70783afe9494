"""Independent reference implementations used only by the tests."""

from itertools import combinations, permutations

import numpy as np


def brute_similarity(grid, x: str, y: str) -> float:
    idx = {b: i for i, b in enumerate("ACGT")}
    total = 0.0
    for i in range(len(x) - 1):
        if x[i] == y[i] and x[i + 1] == y[i + 1]:
            total += grid[idx[x[i]]][idx[x[i + 1]]]
    return total


def brute_rc(x: str) -> str:
    return "".join({"A": "T", "C": "G", "G": "C", "T": "A"}[c] for c in reversed(x))


def cycle_vectors() -> np.ndarray:
    """Normalized indicators of the 24 simple cycles (loops included) on 4 nodes.

    Every joint distribution with equal row and column marginals is a convex
    combination of these (circulation decomposition), so searching over cycle
    weights covers exactly the feasible set without any projection.
    """
    rows = []
    for k in range(1, 5):
        for nodes in combinations(range(4), k):
            head, rest = nodes[0], nodes[1:]
            for perm in permutations(rest):
                cyc = (head,) + perm
                v = np.zeros(16)
                for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                    v[4 * a + b] = 1.0 / k
                rows.append(v)
    return np.array(rows)


def random_search_critical(wflats, starts=8, iters=5000, seed=0):
    """Multi-start randomized search for max sum (p - p^2) w.

    Each step picks two random cycles and moves mass between them with an
    exact line step along that random direction. Returns the best value per
    table and the corresponding distributions.
    """
    C = cycle_vectors()
    rng = np.random.default_rng(seed)
    W = np.repeat(np.asarray(wflats, dtype=float), starts, axis=0)
    K = W.shape[0]
    lam = rng.dirichlet(np.ones(len(C)), K)
    P = lam @ C
    ar = np.arange(K)
    for _ in range(iters):
        i = rng.integers(0, len(C), K)
        j = rng.integers(0, len(C), K)
        d = C[i] - C[j]
        slope = (W * (1 - 2 * P) * d).sum(1)
        curv = 2 * (W * d * d).sum(1)
        t = np.where(curv > 0, slope / np.where(curv > 0, curv, 1.0), 0.0)
        t = np.clip(t, -lam[ar, i], lam[ar, j])
        t = np.where(i == j, 0.0, t)
        lam[ar, i] += t
        lam[ar, j] -= t
        P += t[:, None] * d
    f = ((P - P * P) * W).sum(1).reshape(-1, starts)
    best = f.argmax(1)
    Pbest = P.reshape(-1, starts, 16)[np.arange(len(best)), best]
    return f.max(1), Pbest


def brute_max_code_size(dist: np.ndarray, strands: list[str], D: float) -> int:
    """Maximum RC-closed code size by networkx max-weight clique on RC pairs."""
    import networkx as nx

    pos = {s: i for i, s in enumerate(strands)}
    pairs = []
    for s in strands:
        r = brute_rc(s)
        if r == s or pos[s] > pos[r]:
            continue
        u, v = pos[s], pos[r]
        if dist[u, v] >= D - 1e-9 and dist[v, u] >= D - 1e-9:
            pairs.append((u, v))
    g = nx.Graph()
    g.add_nodes_from(range(len(pairs)))
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            ok = all(
                dist[i, j] >= D - 1e-9 and dist[j, i] >= D - 1e-9
                for i in pairs[a]
                for j in pairs[b]
            )
            if ok:
                g.add_edge(a, b)
    if not pairs:
        return 0
    clique, _ = nx.max_weight_clique(g, weight=None)
    return 2 * len(clique)

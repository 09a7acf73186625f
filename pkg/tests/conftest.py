"""Shared generators and brute-force oracles for the test suite.

Random corpora use fixed seeds so every run sees the same instances.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter

from cge.graphs import ExplorationInstance, Multigraph, norm_edge


def random_connected_graph(rng: random.Random, n_max: int = 7, m_max: int = 10) -> Multigraph:
    """Random connected simple graph: random spanning tree plus extra edges."""
    n = rng.randint(2, n_max)
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        edges.add(norm_edge(order[i], rng.choice(order[:i])))
    possible = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    rng.shuffle(possible)
    extra = rng.randint(0, max(0, min(len(possible), m_max - len(edges))))
    for e in possible[:extra]:
        edges.add(e)
    if len(edges) > m_max:
        return random_connected_graph(rng, n_max, m_max)
    return Multigraph(n, {e: 1 for e in edges})


def random_even_multigraph(
    rng: random.Random, n_max: int = 8, total_max: int = 24
) -> Multigraph:
    """Random connected multigraph with all degrees even.

    Start from a random connected simple graph with multiplicities in {1, 2},
    then pair up odd-degree vertices and toggle multiplicities 1 <-> 2 along a
    connecting path; toggling flips exactly the endpoint parities and never
    removes support edges.
    """
    while True:
        base = random_connected_graph(rng, n_max, m_max=total_max // 2)
        mult = {e: rng.choice((1, 2)) for e in base.distinct_edges()}
        deg = Counter()
        for (u, v), m in mult.items():
            deg[u] += m
            deg[v] += m
        odd = sorted(v for v in range(base.n) if deg[v] % 2)
        rng.shuffle(odd)
        dist_cache = {}
        for a, b in zip(odd[0::2], odd[1::2]):
            # shortest path a -> b in the support graph
            if a not in dist_cache:
                dist_cache[a] = _bfs_parents(base, a)
            parents = dist_cache[a]
            path = [b]
            while path[-1] != a:
                path.append(parents[path[-1]])
            for u, v in zip(path, path[1:]):
                e = norm_edge(u, v)
                mult[e] = 3 - mult[e]
        g = Multigraph(base.n, mult)
        if g.num_edges <= total_max and all(g.degree(v) % 2 == 0 for v in range(g.n)):
            return g


def _bfs_parents(g: Multigraph, source: int) -> dict[int, int]:
    parents = {source: source}
    queue = [source]
    while queue:
        v = queue.pop(0)
        for w in g.neighbors(v):
            if w not in parents:
                parents[w] = v
                queue.append(w)
    return parents


def brute_force_min_vertex_cover(g: Multigraph) -> int:
    """Exact vertex cover number by subset enumeration (n <= 8)."""
    edges = g.distinct_edges()
    for size in range(g.n + 1):
        for cand in itertools.combinations(range(g.n), size):
            cs = set(cand)
            if all(u in cs or v in cs for u, v in edges):
                return size
    return g.n


def feasibility_conditions_hold(
    inst: ExplorationInstance, multisets: list[Counter], budget: int
) -> bool:
    """Declarative feasibility check: each robot
    multiset spans a connected graph containing the start vertex with all
    degrees even (empty multisets pass vacuously), the union covers every
    edge, and no multiset exceeds the budget.
    """
    g = inst.graph
    covered = set()
    for ms in multisets:
        support = {e for e, c in ms.items() if c}
        if any(e not in g.edge_counter() for e in support):
            return False
        covered |= support
        if sum(ms.values()) > budget:
            return False
        if not support:
            continue
        sub = Multigraph.from_counter(g.n, ms)
        if any(sub.degree(v) % 2 for v in range(g.n)):
            return False
        if not sub.is_connected():
            return False
        if sub.degree(inst.v_init) == 0:
            return False
    return covered == set(g.distinct_edges())

"""Exact minimum color counts for (p, q)-colorings of small complete graphs.

``exact_min_colors(n, p, q)`` finds the least number of colors an edge
coloring of the complete graph on n vertices can use while giving every
p-vertex clique at least q distinct colors, together with one witness
coloring achieving it.

The search canonicalizes colorings up to color permutation by enumerating
restricted-growth strings over the edges in lexicographic endpoint order
(each new edge may only use a color seen before or the next fresh index),
and prunes a branch as soon as some clique can no longer reach q distinct
colors even if all of its remaining edges were fresh.  Color counts are
tried in increasing order, so the first satisfiable count is the minimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

MAX_VERTICES = 6


@dataclass(frozen=True)
class OracleResult:
    """Minimum color count with a witness: edges (1-based, i < j) to color indices."""

    n: int
    p: int
    q: int
    min_colors: int
    witness: dict[tuple[int, int], int]


def _search(n: int, p: int, q: int, max_colors: int) -> list[int] | None:
    """One coloring of K_n with at most ``max_colors`` colors meeting (p, q), or None."""
    edges = list(combinations(range(n), 2))
    edge_id = {e: i for i, e in enumerate(edges)}
    clique_edges = [
        [edge_id[pair] for pair in combinations(clique, 2)]
        for clique in combinations(range(n), p)
    ]
    by_edge: list[list[list[int]]] = [[] for _ in edges]
    for members in clique_edges:
        for e in members:
            by_edge[e].append(members)

    colors = [-1] * len(edges)

    def feasible(e: int) -> bool:
        # Every clique through edge e must still be able to reach q colors.
        for members in by_edge[e]:
            seen = set()
            remaining = 0
            for other in members:
                c = colors[other]
                if c < 0:
                    remaining += 1
                else:
                    seen.add(c)
            if len(seen) + remaining < q:
                return False
        return True

    def extend(e: int, used: int) -> bool:
        if e == len(edges):
            return True
        for c in range(min(used + 1, max_colors)):
            colors[e] = c
            if feasible(e) and extend(e + 1, max(used, c + 1)):
                return True
        colors[e] = -1
        return False

    return list(colors) if extend(0, 0) else None


def exact_min_colors(n: int, p: int, q: int) -> OracleResult:
    """Exact minimum colors for a (p, q)-coloring of K_n, with a witness.

    Requires p >= 2, 2 <= q <= C(p, 2), and n <= 6 (the search is exhaustive).
    With n < p there is no p-clique, so a single color suffices.
    """
    if p < 2:
        raise ValueError(f"p must be >= 2, got {p}")
    if not 2 <= q <= comb(p, 2):
        raise ValueError(f"q must lie in 2..C(p,2)={comb(p, 2)}, got {q}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_VERTICES:
        raise ValueError(f"refused: exhaustive search is capped at n <= {MAX_VERTICES}")

    edges = list(combinations(range(1, n + 1), 2))
    if n < p:
        return OracleResult(n, p, q, 1, {e: 0 for e in edges})

    for k in range(1, comb(n, 2) + 1):
        found = _search(n, p, q, k)
        if found is not None:
            witness = {e: c for e, c in zip(edges, found)}
            return OracleResult(n, p, q, max(found) + 1, witness)
    raise AssertionError("unreachable: a rainbow coloring always satisfies (p, q)")

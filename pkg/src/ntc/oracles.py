"""Brute-force reference computations used to cross-check the fast paths."""

from __future__ import annotations

import itertools
import random

from .lattice import GraphError, Vertex, WeightedDualGraph


def _antinef_int(form, z) -> bool:
    n = len(z)
    return all(sum(form[i][j] * z[j] for j in range(n)) <= 0 for i in range(n))


def minimal_antinef_box(graph: WeightedDualGraph, box: int) -> tuple[int, ...] | None:
    """Lexicographically least minimal positive anti-nef cycle with coefficients <= box.

    Returns None when no anti-nef cycle fits in the box.
    """
    form = graph.form
    n = len(graph)
    hits = [
        z
        for z in itertools.product(range(box + 1), repeat=n)
        if any(z) and _antinef_int(form, z)
    ]
    if not hits:
        return None
    minimal = [z for z in hits if not any(w != z and all(a <= b for a, b in zip(w, z)) for w in hits)]
    return min(minimal)


def antinef_in_box(graph: WeightedDualGraph, box) -> list[tuple[int, ...]]:
    """All nonzero integral anti-nef cycles with 0 <= Z_i <= box_i, sorted."""
    form = graph.form
    return [
        z
        for z in itertools.product(*(range(b + 1) for b in box))
        if any(z) and _antinef_int(form, z)
    ]


def random_graph(rng: random.Random, max_vertices: int = 5, tries: int = 200) -> WeightedDualGraph:
    """A random connected negative definite graph (tree plus occasional extra edges)."""
    for _ in range(tries):
        n = rng.randint(1, max_vertices)
        verts = [
            Vertex(f"v{i}", -rng.choice([1, 2, 2, 2, 3, 3, 4, 5]), rng.choice([0, 0, 0, 0, 1, 2]))
            for i in range(n)
        ]
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        if n > 2 and rng.random() < 0.2:
            i, j = rng.sample(range(n), 2)
            edges.append((i, j))
        try:
            return WeightedDualGraph(tuple(verts), tuple(edges), (), "random")
        except GraphError:
            continue
    raise RuntimeError("no negative definite graph found")

"""Slow, direct reimplementations used to cross-check the fast code paths."""

from __future__ import annotations

import itertools
from math import gcd


def reference_cover(lines_of, image, restart=True):
    """Greedy forced-triangle cover written straight from its definition.

    Returns (score, failed, chosen, uncovered) with chosen in commit order.
    """
    n = len(image)
    order = [(x, y) for x in range(n) for y in sorted(lines_of[image[x]])]
    alive = set(order)

    def thirds(x, y):
        return [z for z in range(n) if (y, z) in alive and (z, x) in alive]

    score = 0
    chosen = []
    i = 0
    progress = False
    while True:
        if i == len(order):
            if restart or not progress:
                break
            i, progress = 0, False
            continue
        x, y = order[i]
        i += 1
        if (x, y) not in alive:
            continue
        zs = thirds(x, y)
        if len(zs) != 1:
            continue
        z = zs[0]
        alive -= {(x, y), (y, z), (z, x)}
        score += 1 if x == y == z else 3
        chosen.append((x, y, z))
        progress = True
        if restart:
            i = 0
    failed = any(thirds(x, y) for x, y in alive)
    return score, failed, chosen, alive


def brute_collineation_count(lines_of):
    """Count point permutations mapping lines to lines."""
    n = len(lines_of)
    lines = {frozenset(l) for l in lines_of}
    return sum(
        all(frozenset(p[v] for v in l) in lines for l in lines_of)
        for p in itertools.permutations(range(n))
    )


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]])
        for j in range(len(m))
    )


def determinantal_divisors(M):
    """gcd of all k x k minors for k = 1..min(rows, cols)."""
    rows, cols = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = gcd(g, _det([[M[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


def desarguesian_plane_9():
    """PG(2, 9) over GF(9) = GF(3)[i] / (i^2 + 1), as a list of point sets."""
    field = [(a, b) for a in range(3) for b in range(3)]  # a + b i

    def mul(u, v):
        return ((u[0] * v[0] - u[1] * v[1]) % 3, (u[0] * v[1] + u[1] * v[0]) % 3)

    def add(u, v):
        return ((u[0] + v[0]) % 3, (u[1] + v[1]) % 3)

    zero, one = (0, 0), (1, 0)
    # normalised vectors: first nonzero coordinate is 1
    points = [(one, y, z) for y in field for z in field]
    points += [(zero, one, z) for z in field] + [(zero, zero, one)]
    index = {p: i for i, p in enumerate(points)}
    lines = []
    for l in points:
        pts = []
        for p in points:
            s = zero
            for u, v in zip(l, p):
                s = add(s, mul(u, v))
            if s == zero:
                pts.append(index[p])
        lines.append(pts)
    return lines

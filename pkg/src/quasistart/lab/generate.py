"""Seeded random instances: spaces, set-valued maps, self-maps with alpha, traces."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from string import ascii_lowercase

import numpy as np

from ..multimaps import SetValuedMap, SingleMap
from ..sequences import SequenceTrace
from ..space import FiniteQuasiSpace, validate_space

__all__ = [
    "point_labels",
    "metric_closure",
    "enforce_t0",
    "random_matrix",
    "random_space",
    "gen_space",
    "random_set_map",
    "random_single_map",
    "random_trace",
    "cluster_space",
    "cluster_set_map",
    "cluster_single_map",
    "line_space",
    "chain_instance",
]

DENOMINATORS = (1, 2, 3, 4)


def point_labels(n: int) -> list[str]:
    if n <= len(ascii_lowercase):
        return list(ascii_lowercase[:n])
    return [f"p{i}" for i in range(n)]


def metric_closure(m: list[list[Fraction]]) -> list[list[Fraction]]:
    """All-pairs shortest paths (min-plus Floyd-Warshall) on a square matrix.

    With a zero diagonal and nonnegative entries the result satisfies the
    triangle inequality; entries never increase.
    """
    n = len(m)
    d = [list(row) for row in m]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            di = d[i]
            for j in range(n):
                via = dik + dk[j]
                if via < di[j]:
                    di[j] = via
    return d


def enforce_t0(m: list[list[Fraction]]) -> list[list[Fraction]]:
    """Separate points at distance 0 in both directions.

    Inside each class of such points, d(x_i, x_j) is raised by the smallest
    positive entry whenever i > j.  That keeps the triangle inequality: for a
    third point outside the class the detour already costs at least that much.
    """
    n = len(m)
    d = [list(row) for row in m]
    positive = [v for row in m for v in row if v > 0]
    eps = min(positive) if positive else Fraction(1)
    for i in range(n):
        for j in range(i):
            if m[i][j] == 0 and m[j][i] == 0:
                d[i][j] = m[i][j] + eps
    return d


def _rational(rng: np.random.Generator, scale: int) -> Fraction:
    den = DENOMINATORS[int(rng.integers(len(DENOMINATORS)))]
    return Fraction(int(rng.integers(1, scale * den + 1)), den)


def random_matrix(rng: np.random.Generator, n: int, scale: int = 3, zero_prob: float = 0.35) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        if i != j and rng.random() >= zero_prob:
            m[i][j] = _rational(rng, scale)
    return metric_closure(m)


def random_space(
    rng: np.random.Generator, n: int, scale: int = 3, t0: bool = True, zero_prob: float = 0.35
) -> FiniteQuasiSpace:
    m = random_matrix(rng, n, scale, zero_prob)
    if t0:
        m = enforce_t0(m)
    diag = validate_space(m, require_t0=t0)
    assert diag.ok, diag
    return FiniteQuasiSpace(point_labels(n), m, check=False)


def gen_space(seed: int, n: int, scale: int = 3, t0: bool = True) -> FiniteQuasiSpace:
    """Random valid space on ``n`` points, reproducible from ``seed``.

    Off-diagonal entries are drawn from rationals with denominators 1 to 4 and
    numerators up to ``scale`` times the denominator (about a third are set to
    zero), then closed under shortest paths.  With ``t0`` the T0 condition is
    enforced afterwards.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return random_space(np.random.default_rng(seed), n, scale, t0)


def _subset(rng, labels, max_size=None):
    k = len(labels)
    size = int(rng.integers(1, (max_size or k) + 1))
    idx = sorted(rng.choice(k, size=min(size, k), replace=False).tolist())
    return [labels[i] for i in idx]


def random_set_map(rng: np.random.Generator, space: FiniteQuasiSpace, style: str | None = None) -> SetValuedMap:
    """Set-valued map drawn from one of several shapes.

    ``uniform``: independent random images.  ``constant``: one image for all
    points.  ``sink``: a few absorbing points, everything else maps to sets
    containing one of them.  ``single``: singleton images {g(x)}.
    ``clustered``: points share images by a random grouping.
    """
    labels = list(space.labels)
    styles = ("uniform", "constant", "sink", "single", "clustered")
    if style is None:
        style = styles[int(rng.integers(len(styles)))]
    if style == "uniform":
        return SetValuedMap({x: _subset(rng, labels) for x in labels})
    if style == "constant":
        A = _subset(rng, labels, 2)
        return SetValuedMap({x: A for x in labels})
    if style == "sink":
        sinks = _subset(rng, labels, 2)
        table = {}
        for x in labels:
            if x in sinks and rng.random() < 0.7:
                table[x] = [x]
            else:
                extra = _subset(rng, labels, 2)
                table[x] = sorted(set(extra) | {sinks[int(rng.integers(len(sinks)))]})
        return SetValuedMap(table)
    if style == "single":
        return SetValuedMap({x: [labels[int(rng.integers(len(labels)))]] for x in labels})
    if style == "clustered":
        groups = int(rng.integers(1, 3))
        images = [_subset(rng, labels, 2) for _ in range(groups)]
        return SetValuedMap({x: images[int(rng.integers(groups))] for x in labels})
    raise ValueError(f"unknown style {style!r}")


def random_single_map(rng: np.random.Generator, space: FiniteQuasiSpace, with_alpha: bool = True) -> SingleMap:
    """Self-map biased towards collapsing maps, with an alpha table.

    alpha is at least 1 on a random seed set of pairs closed under (T, T),
    which makes the map alpha-admissible by construction; elsewhere it is 0
    or 1/2.
    """
    labels = list(space.labels)
    n = len(labels)
    targets = _subset(rng, labels, 2)
    table = {}
    for x in labels:
        if rng.random() < 0.75:
            table[x] = targets[int(rng.integers(len(targets)))]
        else:
            table[x] = labels[int(rng.integers(n))]
    if not with_alpha:
        return SingleMap(table)

    pairs = {(x, y) for x in labels for y in labels if rng.random() < 0.3}
    x0 = labels[int(rng.integers(n))]
    pairs.add((x0, table[x0]))
    if rng.random() < 0.5:
        pairs.add((table[x0], x0))
    frontier = list(pairs)
    while frontier:
        x, y = frontier.pop()
        img = (table[x], table[y])
        if img not in pairs:
            pairs.add(img)
            frontier.append(img)
    high = (Fraction(1), Fraction(3, 2), Fraction(2))
    low = (Fraction(0), Fraction(1, 2))
    alpha = {}
    for x in labels:
        for y in labels:
            pool = high if (x, y) in pairs else low
            alpha[(x, y)] = pool[int(rng.integers(len(pool)))]
    return SingleMap(table, alpha)


def random_trace(rng: np.random.Generator, space: FiniteQuasiSpace, max_len: int = 12) -> SequenceTrace:
    labels = list(space.labels)
    length = int(rng.integers(1, max_len + 1))
    pool = _subset(rng, labels)
    pts = [pool[int(rng.integers(len(pool)))] for _ in range(length)]
    if rng.random() < 0.5:
        return SequenceTrace(tuple(pts), int(rng.integers(length)))
    return SequenceTrace(tuple(pts))


def cluster_space(rng: np.random.Generator, n: int) -> tuple[FiniteQuasiSpace, list[list[str]]]:
    """T0 space made of clusters: distances inside a cluster lie in [1/16, 1/4],
    distances between clusters in [1, 2].

    Any map that is constant on clusters and sends everything into one
    cluster moves images by at most 1/4 while distinct clusters sit at
    least 1 apart, which makes contractions with modulus >= 1/4 common.
    """
    labels = point_labels(n)
    k = 1 if n == 1 else int(rng.integers(2, max(2, n // 2) + 1))
    # cluster 0 takes about half the points so that images have room to differ
    owner = [0 if rng.random() < 0.5 else int(rng.integers(k)) for _ in range(n)]
    owner[: min(k, n)] = range(min(k, n))  # no empty cluster
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        if i == j:
            continue
        if owner[i] == owner[j]:
            m[i][j] = Fraction(int(rng.integers(1, 5)), 16)
        else:
            m[i][j] = Fraction(int(rng.integers(4, 9)), 4)
    m = metric_closure(m)
    assert validate_space(m, require_t0=True).ok
    clusters = [[labels[i] for i in range(n) if owner[i] == c] for c in range(k)]
    return FiniteQuasiSpace(labels, m, check=False), clusters


def cluster_set_map(rng: np.random.Generator, clusters: list[list[str]]) -> SetValuedMap:
    """Constant on each cluster, images inside one target cluster (usually the first)."""
    target = clusters[0 if rng.random() < 0.75 else int(rng.integers(len(clusters)))]
    table = {}
    for c in clusters:
        image = _subset(rng, target, 1 if rng.random() < 0.25 else None)
        for x in c:
            table[x] = image
    return SetValuedMap(table)


def cluster_single_map(rng: np.random.Generator, clusters: list[list[str]]) -> SingleMap:
    target = clusters[0 if rng.random() < 0.75 else int(rng.integers(len(clusters)))]
    table = {}
    for c in clusters:
        y = target[int(rng.integers(len(target)))]
        for x in c:
            table[x] = y
    return SingleMap(table)


def line_space(positions: list[Fraction], up: Fraction, down: Fraction) -> FiniteQuasiSpace:
    """Points on a line with d(a, b) = up * max(b - a, 0) + down * max(a - b, 0)."""
    labels = point_labels(len(positions))
    dist = [[up * max(b - a, 0) + down * max(a - b, 0) for b in positions] for a in positions]
    return FiniteQuasiSpace(labels, dist, check=False)


def chain_instance(rng: np.random.Generator, n: int):
    """A self-map that walks a geometric chain towards 0 on an asymmetric line.

    Chain points sit at s r^i (i < m) and at 0; T moves each one a step along
    the chain and fixes 0.  Extra points map onto the chain.  alpha is 1 on
    chain pairs (closed under T x T) and below the largest value allowed by
    the linear gamma elsewhere.  Returns (space, T, seed point, gamma constant).
    """
    r = (Fraction(1, 4), Fraction(1, 3))[int(rng.integers(2))]
    c = max(r / (1 - r), Fraction(1, 2)) if rng.random() < 0.5 else Fraction(3, 4)
    m = int(rng.integers(1, n + 1)) - 1  # chain has m moving points plus 0
    s = Fraction(int(rng.integers(1, 4)))
    positions = [s * r**i for i in range(m)] + [Fraction(0)]
    while len(positions) < n:
        p = Fraction(int(rng.integers(1, 25)), 8)
        if p not in positions:
            positions.append(p)
    up = Fraction(int(rng.integers(0, 3)), 2)
    down = Fraction(int(rng.integers(1, 3)), 2)
    space = line_space(positions, up, down)
    labels = space.labels
    chain = labels[: m + 1]
    table = {chain[i]: chain[min(i + 1, m)] for i in range(m + 1)}
    for x in labels[m + 1:]:
        table[x] = chain[int(rng.integers(m + 1))]
    alpha = {}
    for x in labels:
        for y in labels:
            if x in chain and y in chain:
                alpha[(x, y)] = Fraction(1)
                continue
            moved = space.d(table[x], table[y])
            cap = Fraction(1, 2) if moved == 0 else min(Fraction(1, 2), c * space.d(x, y) / moved)
            alpha[(x, y)] = cap if rng.random() < 0.5 else Fraction(0)
    return space, SingleMap(table, alpha), chain[0], c

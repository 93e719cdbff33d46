"""Brute-force reference computations used to derive expected test values.

Everything here works on plain dicts and nested loops, straight from the
definitions, and shares no code with the package.
"""

from fractions import Fraction
from itertools import product


def dist_table(labels, rows):
    return {(a, b): Fraction(rows[i][j]) for i, a in enumerate(labels) for j, b in enumerate(labels)}


def is_quasi_pseudometric(labels, d):
    if any(d[(x, x)] != 0 for x in labels):
        return False
    if any(v < 0 for v in d.values()):
        return False
    return all(d[(x, z)] <= d[(x, y)] + d[(y, z)] for x, y, z in product(labels, repeat=3))


def is_t0(labels, d):
    return all(x == y or d[(x, y)] > 0 or d[(y, x)] > 0 for x, y in product(labels, repeat=2))


def point_to_set(d, x, A):
    return min(d[(x, a)] for a in A)


def set_to_point(d, A, x):
    return min(d[(a, x)] for a in A)


def hausdorff(d, A, B):
    left = max(point_to_set(d, a, B) for a in A)
    right = max(set_to_point(d, A, b) for b in B)
    return max(left, right)


def start_value(d, F, x):
    return hausdorff(d, [x], F[x])


def end_value(d, F, x):
    return hausdorff(d, F[x], [x])


def mix_value(d, F, x):
    return max(max(d[(x, y)], d[(y, x)]) for y in F[x])


def closure(labels, d, A, side):
    out = set()
    for x in labels:
        for a in A:
            f, b = d[(x, a)], d[(a, x)]
            hit = {"forward": f == 0, "backward": b == 0, "symmetric": f == 0 and b == 0}[side]
            if hit:
                out.add(x)
    return out


def greedy_startpoint(labels, d, F, c, x0, limit=100):
    """Plain transcription of the greedy descent; returns (trajectory, status)."""
    f = {x: start_value(d, F, x) for x in labels}
    traj = [x0]
    for _ in range(limit):
        x = traj[-1]
        if f[x] == 0:
            return traj, "startpoint"
        feas = [y for y in labels if y in F[x] and f[y] <= c * d[(x, y)]]
        if not feas:
            return traj, "stuck"
        y = min(feas, key=lambda p: (f[p], labels.index(p)))
        if y in traj:
            return traj + [y], "cycle"
        traj.append(y)
    return traj, "limit"


def left_k_cauchy_horizon(d, pts):
    """Finite-horizon left K-Cauchy test on a non-repeating trace.

    For every threshold 1/k (k = 1..L) some start index n0 <= L // 2 must
    give d(x_a, x_b) < 1/k for all n0 <= a <= b < L.
    """
    L = len(pts)
    for k in range(1, L + 1):
        eps = Fraction(1, k)
        ok = any(
            all(d[(pts[a], pts[b])] < eps for a in range(n0, L) for b in range(a, L))
            for n0 in range(0, L // 2 + 1)
        )
        if not ok:
            return False
    return True

"""Hand-built instances: the two-point fixed-but-not-startpoint space, the
three-point cyclic shift, and the harmonic spaces X_n = {1, 1/2, ..., 1/n}
with d(1/i, 1/j) = max(1/i - 1/j, 0) and F(a) = X_n minus {a}.

The harmonic family is the only infinite example; it is shipped as finite
truncations.  On every truncation the smallest point 1/n is a startpoint
(its distances to all other points vanish), so the infinite space's lack of
startpoints cannot be reproduced at finite size.
"""

from __future__ import annotations

from fractions import Fraction

from ..instance import LabInstance
from ..multimaps import SetValuedMap
from ..space import FiniteQuasiSpace

__all__ = ["CORPUS_IDS", "corpus", "harmonic_space", "remark21", "example27", "example28", "example36", "example36_family"]

CORPUS_IDS = ("remark21", "example27", "example28", "example36", "example36-family")


def _complement_map(space: FiniteQuasiSpace) -> SetValuedMap:
    return SetValuedMap({a: [x for x in space.labels if x != a] for a in space.labels})


def harmonic_space(n: int) -> FiniteQuasiSpace:
    if n < 1:
        raise ValueError(f"need at least one point, got n={n}")
    labels = [str(Fraction(1, i)) for i in range(1, n + 1)]
    zero = Fraction(0)
    # d(1/i, 1/j) = 1/i - 1/j = (j - i) / (i j) when j > i
    dist = [[Fraction(j - i, i * j) if j > i else zero for j in range(1, n + 1)] for i in range(1, n + 1)]
    return FiniteQuasiSpace(labels, dist, check=False)


def remark21() -> LabInstance:
    space = FiniteQuasiSpace(["0", "1"], [[0, 0], [1, 0]], require_t0=True)
    F = SetValuedMap({x: space.labels for x in space.labels})
    return LabInstance(space, F, provenance={"corpus": "remark21"})


def example27() -> LabInstance:
    space = FiniteQuasiSpace(
        ["0", "1", "2"],
        [[0, 0, 0], [1, 0, 1], [2, 2, 0]],
        require_t0=True,
    )
    return LabInstance(space, _complement_map(space), provenance={"corpus": "example27"})


def example28(N: int) -> LabInstance:
    """Truncation of the harmonic space to its first ``N`` points."""
    space = harmonic_space(N)
    F = _complement_map(space) if N >= 2 else None
    return LabInstance(space, F, provenance={"corpus": "example28", "N": N})


def example36_family(n: int) -> LabInstance:
    if n < 2:
        raise ValueError(f"the complement map needs at least two points, got n={n}")
    space = harmonic_space(n)
    return LabInstance(space, _complement_map(space), c=Fraction(1, 2), x0="1",
                       provenance={"corpus": "example36-family", "n": n})


def example36() -> LabInstance:
    inst = example36_family(3)
    return LabInstance(inst.space, inst.F, c=inst.c, x0=inst.x0, provenance={"corpus": "example36"})


def corpus(name: str, n: int | None = None) -> LabInstance:
    """Look up a corpus instance; ``n`` sizes ``example28`` and ``example36-family``."""
    if name == "remark21":
        return remark21()
    if name == "example27":
        return example27()
    if name == "example36":
        return example36()
    if name == "example28":
        if n is None:
            raise ValueError("example28 needs a size N")
        return example28(n)
    if name == "example36-family":
        if n is None:
            raise ValueError("example36-family needs a size n")
        return example36_family(n)
    raise ValueError(f"unknown corpus id {name!r}; expected one of {CORPUS_IDS}")

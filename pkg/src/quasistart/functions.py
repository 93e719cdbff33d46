"""One-dimensional moduli used as comparison functions and contraction bounds.

Three exact families are supported:

* ``linear``: t -> c t with 0 <= c < 1,
* ``power``:  t -> c t**p with c > 0 and integer p >= 1,
* ``table``:  piecewise linear through rational breakpoints (0, v0), (t1, v1), ...
  and constant after the last breakpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .space import as_rational

__all__ = ["FunctionSpec", "Certification", "certify_comparison", "certify", "HEURISTIC_RATIO"]

# ratio-test cutoff for tables: the late iterates must shrink at least this fast
HEURISTIC_RATIO = Fraction(9, 10)


@dataclass(frozen=True)
class FunctionSpec:
    kind: str
    params: tuple  # linear: (c,), power: (c, p), table: ((t, v), ...)

    def __post_init__(self):
        if self.kind == "linear":
            (c,) = self.params
            c = as_rational(c)
            if not 0 <= c < 1:
                raise ValueError(f"linear modulus needs 0 <= c < 1, got {c}")
            object.__setattr__(self, "params", (c,))
        elif self.kind == "power":
            c, p = self.params
            c = as_rational(c)
            if c <= 0:
                raise ValueError(f"power modulus needs c > 0, got {c}")
            if isinstance(p, bool) or int(p) != p or int(p) < 1:
                raise ValueError(f"power modulus needs an integer exponent >= 1, got {p!r}")
            object.__setattr__(self, "params", (c, int(p)))
        elif self.kind == "table":
            pts = tuple((as_rational(t), as_rational(v)) for t, v in self.params)
            if not pts or pts[0][0] != 0:
                raise ValueError("table must start with a breakpoint at t = 0")
            if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
                raise ValueError("table breakpoints must be strictly increasing in t")
            if any(v < 0 for _, v in pts):
                raise ValueError("table values must be nonnegative")
            object.__setattr__(self, "params", pts)
        else:
            raise ValueError(f"unknown function kind {self.kind!r}")

    @classmethod
    def linear(cls, c) -> "FunctionSpec":
        return cls("linear", (c,))

    @classmethod
    def power(cls, c, p: int) -> "FunctionSpec":
        return cls("power", (c, p))

    @classmethod
    def table(cls, breakpoints: Iterable[Sequence]) -> "FunctionSpec":
        return cls("table", tuple(tuple(bp) for bp in breakpoints))

    def __call__(self, t) -> Fraction:
        t = as_rational(t)
        if t < 0:
            raise ValueError(f"moduli are defined on [0, inf), got {t}")
        if self.kind == "linear":
            return self.params[0] * t
        if self.kind == "power":
            c, p = self.params
            return c * t**p
        pts = self.params
        if t >= pts[-1][0]:
            return pts[-1][1]
        for (t0, v0), (t1, v1) in zip(pts, pts[1:]):
            if t0 <= t < t1:
                return v0 + (v1 - v0) * (t - t0) / (t1 - t0)
        raise AssertionError("unreachable")

    def iterate(self, t, n: int) -> Fraction:
        """The n-th iterate applied to t (n = 0 gives t)."""
        t = as_rational(t)
        for _ in range(n):
            t = self(t)
        return t

    def to_dict(self) -> dict:
        if self.kind == "linear":
            return {"kind": "linear", "params": {"c": str(self.params[0])}}
        if self.kind == "power":
            return {"kind": "power", "params": {"c": str(self.params[0]), "p": self.params[1]}}
        return {"kind": "table", "params": {"breakpoints": [[str(t), str(v)] for t, v in self.params]}}

    @classmethod
    def from_dict(cls, doc: dict) -> "FunctionSpec":
        kind = doc["kind"]
        params = doc.get("params", {})
        if kind == "linear":
            return cls.linear(params["c"])
        if kind == "power":
            return cls.power(params["c"], params["p"])
        if kind == "table":
            return cls.table(params["breakpoints"])
        raise ValueError(f"unknown function kind {kind!r}")


@dataclass(frozen=True)
class Certification:
    nondecreasing: bool
    series_summable: bool
    summable_heuristic: bool  # True when series_summable rests on the ratio test only
    below_identity: bool
    usc: bool
    liminf_gap_positive: bool
    partial_sums: tuple = ()  # (t, sum of the first N iterates) per sample for tables

    @property
    def comparison(self) -> bool:
        """Proven nondecreasing and summable: usable without caveat as gamma."""
        return self.nondecreasing and self.series_summable and not self.summable_heuristic

    @property
    def comparison_heuristic(self) -> bool:
        return self.nondecreasing and self.series_summable

    @property
    def contraction_modulus(self) -> bool:
        """usc, below the identity, and t - psi(t) bounded away from 0 at infinity."""
        return self.below_identity and self.usc and self.liminf_gap_positive


def _table_summable(spec: FunctionSpec, samples, horizon: int):
    sums = []
    ok = True
    for t in samples:
        iterates = [spec(t)]
        for _ in range(horizon - 1):
            iterates.append(spec(iterates[-1]))
        sums.append((t, sum(iterates, Fraction(0))))
        if iterates[-1] == 0:
            continue
        late = iterates[len(iterates) // 2:]
        ratios = [b / a for a, b in zip(late, late[1:]) if a != 0]
        if not ratios or max(ratios) > HEURISTIC_RATIO:
            ok = False
    return ok, tuple(sums)


def certify_comparison(spec: FunctionSpec, sample_ts: Iterable = (), horizon: int = 50) -> Certification:
    """Certify the comparison-function and contraction-modulus properties.

    Linear and power kinds are settled analytically.  For tables the shape
    properties are exact (piecewise linear, constant tail); summability of the
    iterate series is judged by a ratio test on the second half of ``horizon``
    iterates at each sample point (default: the positive breakpoints) and is
    always flagged as heuristic.
    """
    if spec.kind == "linear":
        return Certification(True, True, False, True, True, True)
    if spec.kind == "power":
        c, p = spec.params
        if p == 1:
            good = c < 1
            return Certification(True, good, False, good, True, good)
        # c t**p overtakes t for large t, so the iterates blow up there
        return Certification(True, False, False, False, True, False)

    pts = spec.params
    nondecreasing = all(b[1] >= a[1] for a, b in zip(pts, pts[1:]))
    below = pts[0][1] == 0 and all(v < t for t, v in pts[1:])
    samples = [as_rational(t) for t in sample_ts] or [t for t, _ in pts[1:]] or [Fraction(1)]
    if any(t <= 0 for t in samples):
        raise ValueError("sample points must be positive")
    summable, sums = _table_summable(spec, samples, horizon)
    # constant after the last breakpoint, so t - psi(t) -> infinity
    return Certification(nondecreasing, summable, True, below, True, True, sums)


def certify(spec: FunctionSpec) -> Certification:
    return certify_comparison(spec)

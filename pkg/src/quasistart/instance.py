"""A bundle of a space with the maps and parameters that go with it."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .functions import FunctionSpec
from .multimaps import SetValuedMap, SingleMap
from .sequences import SequenceTrace
from .space import FiniteQuasiSpace, StructuralError


@dataclass(frozen=True)
class LabInstance:
    space: FiniteQuasiSpace
    F: SetValuedMap | None = None
    f: SingleMap | None = None
    gamma: FunctionSpec | None = None
    psi: FunctionSpec | None = None
    c: Fraction | None = None
    x0: str | None = None
    trace: SequenceTrace | None = None
    candidate: str | None = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.F is not None:
            self.F.validate(self.space)
        if self.f is not None:
            self.f.validate(self.space)
        for name in ("x0", "candidate"):
            x = getattr(self, name)
            if x is not None and x not in self.space:
                raise StructuralError(f"{name} {x!r} is not a point of the space")
        if self.trace is not None:
            stray = [x for x in self.trace.points if x not in self.space]
            if stray:
                raise StructuralError(f"trace leaves the space: {stray}")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.space.labels

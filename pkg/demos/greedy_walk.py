"""Greedy startpoint search on harmonic spaces {1, 1/2, ..., 1/n}.

Each step moves to the image point of smallest start value among those the
step condition allows; the walk always lands on 1/n, the one point with no
admissible successor.
"""

from quasistart import feasibility_audit, startpoint_solve
from quasistart.lab import corpus

for n in (3, 5, 8):
    inst = corpus("example36-family", n)
    log = startpoint_solve(inst.space, inst.F, inst.c, "1")
    print(f"n={n}: {' -> '.join(log.trajectory)}  [{log.status.value}]")
    for step in log.steps:
        print(f"    f({step.point}) = {step.value}, next f = {step.successor_value} <= {step.feasibility_bound}")
    stuck = [x for x, ys in feasibility_audit(inst.space, inst.F, inst.c).items() if not ys]
    print(f"    no admissible successor at {stuck}")

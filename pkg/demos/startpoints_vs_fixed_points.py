"""Startpoints, endpoints and fixed points on three small asymmetric spaces.

Run with ``python3 demos/startpoints_vs_fixed_points.py``.
"""

from quasistart import approx_value, classify_all, hausdorff
from quasistart.lab import corpus


def show(name):
    inst = corpus(name)
    print(f"== {name}")
    for row in classify_all(inst.space, inst.F):
        tags = [t for t in ("startpoint", "endpoint", "fixed") if getattr(row, t)]
        print(f"  {row.point:>3}  start {str(row.start_value):>4}  end {str(row.end_value):>4}  {', '.join(tags)}")
    for kind in ("start", "end", "mix"):
        a = approx_value(inst.space, inst.F, kind)
        print(f"  inf {kind} value = {a.value} (at {a.witness})")


show("remark21")
# 1 lies in its own image yet sits at positive excess from it
inst = corpus("remark21")
print("  H({1}, F1) =", hausdorff(inst.space, ["1"], inst.F["1"]).value)
print()
# every point has positive mix value even though some start value is 0
show("example27")

"""Run a few property suites and show what a caught bug looks like.

The last part plants a false claim ("no space has more than two points") and
lets the lab find, shrink and replay a counterexample.
"""

from quasistart.fileformat import dump_instance
from quasistart.lab import SUITES, replay, run_suite
from quasistart.lab.suites import Suite

for name in ("theorem13", "theorem29", "theorem35", "hyperspace"):
    rep = run_suite(name, trials=200, seed=0)
    print(f"{name:<12} applicable {rep.applicable:>3} / drawn {rep.draws:>3}  "
          f"counterexamples {len(rep.counterexamples)}  bins {dict(rep.bins)}")

base = SUITES["lemma22"]
SUITES["planted"] = Suite("planted", base.draw, base.classify,
                          lambda inst: "too many points" if len(inst.space) > 2 else None)
rep = run_suite("planted", trials=5, seed=0, size_bounds=(4, 6))
ce = rep.counterexamples[0]
print(f"\nplanted bug: {len(ce.original.space)} points shrunk to {len(ce.instance.space)}")
print("replay:", replay(ce.instance, "planted"))
print(dump_instance(ce.instance))

"""Random instances, the hand-built corpus, property suites and shrinking."""

from .corpus import CORPUS_IDS, corpus, harmonic_space
from .generate import gen_space, metric_closure, random_set_map, random_single_map, random_space, random_trace
from .shrink import shrink
from .suites import SUITES, Counterexample, SuiteReport, replay, run_suite

__all__ = [
    "CORPUS_IDS",
    "corpus",
    "harmonic_space",
    "gen_space",
    "metric_closure",
    "random_space",
    "random_set_map",
    "random_single_map",
    "random_trace",
    "shrink",
    "SUITES",
    "Counterexample",
    "SuiteReport",
    "replay",
    "run_suite",
]

"""Services layer for banalg: constructors, solvers, deciders and the theorem harness."""

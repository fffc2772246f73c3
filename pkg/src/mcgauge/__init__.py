"""Exact-arithmetic calculator for gauge equivalence questions.

Decides gauge/homotopy equivalence of Maurer-Cartan elements in complete
weight-filtered dg Lie algebras and of A-infinity structures, producing
machine-checkable certificates (witness gauges, infinity-isotopies) or
non-vanishing obstruction classes.
"""

__version__ = "0.1.0"

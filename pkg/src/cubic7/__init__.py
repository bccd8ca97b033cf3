"""Exact-arithmetic verification toolkit for cubic fourfolds with an
order-7 symmetry: invariant cubic forms, GIT stability, singular loci,
lattice discriminant data, and the arithmetic groups acting on the
associated period domains."""

__version__ = "0.1.0"

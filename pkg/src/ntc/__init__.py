"""Exact intersection-lattice computations for normal surface singularities.

Reduction numbers of integrally closed ideals, b-sequences and Gorenstein
tests for the associated graded rings, with two worked families (Brieskorn
and homogeneous hypersurfaces).
"""

__version__ = "0.1.0"

"""Homology length spectra, stable norms and zeta functions of weighted graphs and flat tori."""

from .graph import WeightedGraph, build_graph, homology_basis, parse_graph
from .stable import stable_ball, stable_norm
from .spectrum import enumerate_spectrum, ordered_spectrum
from .ehrhart import ehrhart_fit, hurwitz_decomposition, shell_counts
from .zeta import hurwitz_zeta, riemann_zeta, zeta_st_meromorphic, zeta_st_truncated, zeta_sys_truncated
from .lattice import Lattice, lattice_from_gram, theta_coefficients, witt_pair

__version__ = "0.1.0"

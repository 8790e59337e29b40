"""Multigraded Betti and Tor tables of monomial modules, with constructive
certificates for the binomial lower bounds on Tor dimensions."""

from .betti import BettiTable, betti_table, check_cor41, check_thm42, strand_report, z_graded
from .linalg import DenseMatrix, FieldSpec, nullspace, rank, rref, solve
from .monomials import (ModulePresentation, MonomialIdeal, Summand, free_module, k_polynomial, minimalize,
                        module_degree_basis, quotient, residue_field)
from .polyseq import KoszulInstance, extract, full_certificate, push, validate
from .tor import check_tor_bounds, taylor_strand, tor_dims

__version__ = "0.1.0"

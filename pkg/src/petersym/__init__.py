"""Exact modular symbols for finite-index subgroups of SL2(Z).

The package computes extended Farey symbols (including a subgroup
algorithm driven by membership predicates), rational Eisenstein period
symbols built from Bernoulli distributions, the algebraic Petersson
pairing on modular-symbol spaces, Hecke operators, and the cuspidal
subspace cut out by orthogonality to Eisenstein symbols.  All core
arithmetic is exact over Q; a floating-point oracle for level-1 period
integrals lives in :mod:`petersym.qexp`.
"""

__version__ = "0.1.0"

"""Sieve for primes p where X_0^+(p^r)(Q) could carry non-trivial points.

Submodules: ``ntheory`` (Kronecker, primality, factoring), ``quadforms``
(reduced forms, class numbers), ``classpoly`` (Hilbert class polynomials and
r_D), ``intpoly`` (integer polynomials and resultants), ``wheel`` and
``sieve`` (the two-part sieve), ``bounds`` (explicit height bounds),
``units`` (Siegel-function estimates) and ``cli``.
"""
from .bounds import crossover_r2, crossover_r3, runge_height_bound
from .classpoly import class_polynomial, r_d
from .intpoly import IntPolynomial, resultant
from .ntheory import factor_in_range, is_prime, kronecker
from .quadforms import DEFAULT_DISCRIMINANTS, DEFAULT_DPRIME, class_number, discriminant_table
from .sieve import SieveReport, bad_discrim_and_primes, full_run, very_bad_primes
from .wheel import CongruenceWheel, squares_congruences

__version__ = "0.1.0"

__all__ = [
    "CongruenceWheel",
    "DEFAULT_DISCRIMINANTS",
    "DEFAULT_DPRIME",
    "IntPolynomial",
    "SieveReport",
    "bad_discrim_and_primes",
    "class_number",
    "class_polynomial",
    "crossover_r2",
    "crossover_r3",
    "discriminant_table",
    "factor_in_range",
    "full_run",
    "is_prime",
    "kronecker",
    "r_d",
    "resultant",
    "runge_height_bound",
    "squares_congruences",
    "very_bad_primes",
]

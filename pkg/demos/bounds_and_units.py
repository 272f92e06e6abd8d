"""Height bounds, their crossover primes and the Siegel-function estimates.

Run: python demos/bounds_and_units.py
"""
import random

from cartan_sieve.bounds import crossover_r2, crossover_r3, evaluate_bounds
from cartan_sieve.units import (
    SiegelIndex,
    check_pga,
    check_pu,
    log_abs_siegel_g,
    random_domain_point,
    verify_units,
)

for p in (13, 10**4, 10**7):
    print(f"p = {p}")
    for row in evaluate_bounds(p):
        print(f"  {row.name:<20} {row.value:.6g}")

for c in (crossover_r2(detail=True), crossover_r3(detail=True)):
    print(f"threshold {c.threshold}, residual increasing from {c.monotone_from}")

rng = random.Random(1)
tau = random_domain_point(rng)
a = SiegelIndex.of(2, 3, 7)
print(f"tau = {tau.tau:.4f}, |q| = {tau.abs_q:.4f}")
print("log|g_a(tau)| =", float(log_abs_siegel_g(a, tau.tau)))
print("leading-term estimate:", check_pga(a, tau))
print("orbit-sum estimate:", check_pu(7, 2, tau))

for row in verify_units(pga_samples=200, pu_samples=20, llogz_samples=2000, loglog_samples=200):
    print(row)

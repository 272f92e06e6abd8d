"""Both halves of the prime sieve at a modest N, with a resumable checkpoint.

Run: python demos/sieve_walkthrough.py [N]
"""
import sys
import tempfile
from pathlib import Path

from cartan_sieve.quadforms import DEFAULT_DISCRIMINANTS, DEFAULT_DPRIME
from cartan_sieve.sieve import bad_discrim_and_primes, full_run, very_bad_primes
from cartan_sieve.wheel import wheel_for_discriminants

nmax = int(sys.argv[1]) if len(sys.argv) > 1 else 10**5

# resultant criterion: which discriminants join L, and which primes stay bad
p1 = bad_discrim_and_primes(DEFAULT_DISCRIMINANTS, nmax)
print(f"L has {len(p1.L)} discriminants, bad = {p1.bad}, good = {p1.good[:8]}...")

# splitting criterion: the first six discriminants as a CRT wheel
wheel = wheel_for_discriminants(DEFAULT_DPRIME[:6])
rest = [d for d in DEFAULT_DISCRIMINANTS if d not in DEFAULT_DPRIME[:6]]
print(f"wheel modulus {wheel.modulus} with {len(wheel)} residues")
survivors = very_bad_primes(wheel, [], 11, nmax + 1)
print(f"{len(survivors)} primes <= {nmax} split in all six fields")
print("after the remaining", len(rest), "checks:",
      very_bad_primes(wheel, rest, 11, nmax + 1))


class Stop(Exception):
    pass


def stop_after(n):
    seen = [0]

    def progress(rec):
        seen[0] += 1
        if seen[0] == n:
            raise Stop
    return progress


with tempfile.TemporaryDirectory() as tmp:
    ck = Path(tmp) / "run.ck"
    try:
        full_run(nmax=nmax, checkpoint_path=ck, progress=stop_after(20))
    except Stop:
        print("interrupted with", len(ck.read_text().splitlines()), "checkpoint lines")
    report = full_run(nmax=nmax, checkpoint_path=ck)
print(f"report: bad = {report.bad}, verybad = {report.verybad}, incomplete = {report.incomplete}")
print("certified:", report.certified)

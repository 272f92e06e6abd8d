"""The two-part prime sieve.

Part I walks the discriminant list, factors r_D over [11, N] and sorts each
new prime into ``good`` (some discriminant already in L is inert or ramified
at p) or ``bad``.  Part II scans the congruence wheel for primes that split
in every field of the list (``verybad``).  A prime p in [11, N], p != 13,
outside bad and verybad is then covered by the resultant criterion.

Both parts are split into cells that can run in worker processes and are
recorded in a :class:`~cartan_sieve.checkpoint.Checkpoint` as they finish.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .checkpoint import CellRecord, Checkpoint, config_fingerprint
from .classpoly import r_d
from .ntheory import (
    DEFAULT_SIEVE_LIMIT,
    RangeFactors,
    factor_in_range,
    is_prime,
    is_pseudoprime,
    kronecker,
)
from .quadforms import CLASS_NUMBER_ONE, DEFAULT_DISCRIMINANTS, DEFAULT_DPRIME
from .wheel import CongruenceWheel, wheel_for_discriminants

log = logging.getLogger(__name__)

__all__ = [
    "Part1Result",
    "SieveReport",
    "bad_discrim_and_primes",
    "very_bad_primes",
    "full_run",
    "EXCLUDED_PRIME",
    "LOWEST_PRIME",
]

LOWEST_PRIME = 11
EXCLUDED_PRIME = 13
DEFAULT_BUDGET = 200_000
DEFAULT_CHUNK = 1 << 16
DEFAULT_SPAN_LAYERS = 64

Progress = Callable[[CellRecord], None]


def _in_scope(p: int, nmax: int) -> bool:
    return LOWEST_PRIME <= p <= nmax and p != EXCLUDED_PRIME


# ---------------------------------------------------------------- Part I


@dataclass
class Part1Result:
    L: list[int]
    bad: list[int]
    good: list[int]
    incomplete: list[tuple[int, int]]
    factors: dict[int, tuple[int, ...]] = field(default_factory=dict)


def _rd_cell(d: int, nmax: int, c_range: tuple[int, int], budget: int,
             sieve_limit: int, seed: int = 1) -> RangeFactors:
    r = r_d(d, c_range)
    if r == 0:
        raise ArithmeticError(f"r_D vanishes for D = {d}")
    hi = max(nmax, LOWEST_PRIME)
    if r == 1:
        return RangeFactors(1, LOWEST_PRIME, hi, (), True)
    return factor_in_range(r, LOWEST_PRIME, hi, budget=budget, sieve_limit=sieve_limit,
                           seed=seed)


def _run_cells(tasks: list[tuple[str, Callable, tuple]], workers: int,
               checkpoint: Checkpoint | None, progress: Progress | None,
               to_record: Callable[[str, object], CellRecord]) -> dict[str, object]:
    """Run pending cells inline or in a process pool; single-writer merge."""
    out: dict[str, object] = {}

    def finish(cid, value):
        rec = to_record(cid, value)
        if checkpoint is not None:
            checkpoint.write(rec)
        out[cid] = value
        if progress is not None:
            progress(rec)

    if workers <= 1 or len(tasks) <= 1:
        for cid, fn, args in tasks:
            finish(cid, fn(*args))
        return out
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        futures = {pool.submit(fn, *args): cid for cid, fn, args in tasks}
        for fut in as_completed(futures):
            finish(futures[fut], fut.result())
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
    return out


def bad_discrim_and_primes(
    discriminants: Sequence[int],
    nmax: int,
    c_range: tuple[int, int] = (2, 7),
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    checkpoint: Checkpoint | None = None,
    progress: Progress | None = None,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    seed: int = 1,
) -> Part1Result:
    """Build L, bad and good from the resultant criterion.

    Discriminants are absorbed into L in the given order, starting from the
    nine of class number one.  A discriminant whose r_D could not be fully
    factored over [11, nmax] is reported in ``incomplete`` and left out of L.
    """
    if nmax < LOWEST_PRIME:
        raise ValueError("nmax must be at least 11")
    L = list(CLASS_NUMBER_ONE)
    todo = []
    for d in discriminants:
        if d not in L and d not in todo:
            todo.append(int(d))

    known: dict[str, RangeFactors] = {}
    tasks = []
    for d in todo:
        cid = f"D{d}"
        rec = checkpoint.get(cid) if checkpoint is not None else None
        if rec is not None and rec.status == "done":
            known[cid] = RangeFactors(0, LOWEST_PRIME, rec.hi, rec.primes, True)
        else:
            tasks.append((cid, _rd_cell, (d, nmax, tuple(c_range), budget, sieve_limit, seed)))

    def to_record(cid, rf: RangeFactors) -> CellRecord:
        return CellRecord(cid, LOWEST_PRIME, nmax,
                          "done" if rf.complete else "incomplete", rf.primes)

    known.update(_run_cells(tasks, workers, checkpoint, progress, to_record))

    bad: list[int] = []
    good: list[int] = []
    incomplete: list[tuple[int, int]] = []
    factors: dict[int, tuple[int, ...]] = {}
    for d in todo:
        rf = known[f"D{d}"]
        factors[d] = rf.primes
        for p in rf.primes:
            if not _in_scope(p, nmax) or p in good or p in bad:
                continue
            if all(kronecker(m, p) == 1 for m in L):
                bad.append(p)
            else:
                good.append(p)
        if rf.complete:
            L.append(d)
        else:
            incomplete.append((d, rf.residual))
            log.warning("r_D for D=%d not fully factored; D left out of L", d)
    return Part1Result(L, bad, good, incomplete, factors)


# ---------------------------------------------------------------- Part II

_PREFILTER = np.array([31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
                       97, 101, 103, 107, 109, 113, 127], dtype=np.int64)


def _scan_cell(residues: np.ndarray, modulus: int, check_list: tuple[int, ...],
               lo: int, hi: int) -> tuple[int, ...]:
    """Primes p in [lo, hi) with p mod M in ``residues`` splitting in check_list."""
    if lo >= hi or residues.size == 0:
        return ()
    res = residues.astype(np.int64)
    # first representative >= lo: s + ceil((lo - s) / M) * M
    cand = res + (-((res - lo) // modulus)) * modulus
    found = []
    while True:
        cand = cand[cand < hi]
        if cand.size == 0:
            break
        # composite-by-small-prime shortcut; keeps p equal to the small prime
        div = (cand[:, None] % _PREFILTER[None, :] == 0) & (cand[:, None] != _PREFILTER[None, :])
        for p in cand[~div.any(axis=1)].tolist():
            if not is_pseudoprime(p):
                continue
            if all(kronecker(d, p) == 1 for d in check_list) and is_prime(p):
                found.append(p)
        cand = cand + modulus
    return tuple(sorted(found))


def _intervals(n: int, m: int, span: int) -> list[tuple[int, int]]:
    if n >= m:
        return []
    out = []
    lo = n
    while lo < m:
        out.append((lo, min(lo + span, m)))
        lo += span
    return out


def very_bad_primes(
    wheel: CongruenceWheel,
    check_list: Iterable[int],
    n: int,
    m: int,
    workers: int = 1,
    chunk_size: int = DEFAULT_CHUNK,
    span_layers: int = DEFAULT_SPAN_LAYERS,
    checkpoint: Checkpoint | None = None,
    progress: Progress | None = None,
) -> list[int]:
    """Primes p in [n, m) on the wheel with kronecker(d, p) = 1 for all d.

    The residue list is cut into chunks of ``chunk_size`` and [n, m) into
    spans of ``span_layers`` turns of the wheel; each (chunk, span) pair is
    one checkpoint cell.
    """
    # cheapest characters first
    checks = tuple(sorted({int(d) for d in check_list}, key=lambda d: (abs(d), d)))
    M = wheel.modulus
    residues = wheel.residues
    n_chunks = max(1, -(-len(residues) // chunk_size))
    spans = _intervals(n, m, M * span_layers)

    found: set[int] = set()
    tasks = []
    for lo, hi in spans:
        for k in range(n_chunks):
            cid = f"W{k}@{lo}"
            if checkpoint is not None and checkpoint.done(cid):
                found.update(checkpoint.get(cid).primes)
                continue
            chunk = residues[k * chunk_size:(k + 1) * chunk_size]
            tasks.append((cid, _scan_cell, (chunk, M, checks, lo, hi)))

    bounds = {f"W{k}@{lo}": (lo, hi) for lo, hi in spans for k in range(n_chunks)}

    def to_record(cid, primes) -> CellRecord:
        lo, hi = bounds[cid]
        return CellRecord(cid, lo, hi, "done", tuple(primes))

    for primes in _run_cells(tasks, workers, checkpoint, progress, to_record).values():
        found.update(primes)
    return sorted(found)


# ---------------------------------------------------------------- full run


@dataclass
class SieveReport:
    config: dict
    L: list[int]
    good: list[int]
    bad: list[int]
    verybad: list[int]
    incomplete: list[tuple[int, int]]
    stats: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        """True when every prime in range outside bad and verybad is covered."""
        return not self.incomplete

    def covers(self, p: int) -> bool:
        nmax = self.config["nmax"]
        return (self.certified and _in_scope(p, nmax)
                and p not in self.bad and p not in self.verybad)

    def to_dict(self, timing: bool = True) -> dict:
        stats = dict(self.stats)
        if not timing:
            stats.pop("timing", None)
        return {
            "config": self.config,
            "L": list(self.L),
            "good": [str(p) for p in sorted(self.good)],
            "bad": [str(p) for p in sorted(self.bad)],
            "verybad": [str(p) for p in sorted(self.verybad)],
            "incomplete": [{"D": d, "residual": str(r)} for d, r in self.incomplete],
            "stats": stats,
        }

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def write(self, path: str | os.PathLike) -> None:
        """Atomic write: temp file in the same directory, then rename."""
        path = os.fspath(path)
        folder = os.path.dirname(os.path.abspath(path))
        os.makedirs(folder, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=folder, prefix=".report-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.to_json())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def from_dict(cls, data: dict) -> "SieveReport":
        return cls(
            config=data["config"],
            L=[int(d) for d in data["L"]],
            good=[int(p) for p in data["good"]],
            bad=[int(p) for p in data["bad"]],
            verybad=[int(p) for p in data["verybad"]],
            incomplete=[(int(x["D"]), int(x["residual"])) for x in data["incomplete"]],
            stats=data.get("stats", {}),
        )


def run_config(discriminants, dprime, nmax, c_range, budget, sieve_limit,
               chunk_size, span_layers, mode, seed=1) -> dict:
    return {
        "mode": mode,
        "discriminants": [int(d) for d in discriminants],
        "dprime": [int(d) for d in dprime],
        "nmax": int(nmax),
        "c_range": [int(c_range[0]), int(c_range[1])],
        "budget": int(budget),
        "seed": int(seed),
        "sieve_limit": int(sieve_limit),
        "chunk_size": int(chunk_size),
        "span_layers": int(span_layers),
    }


def full_run(
    discriminants: Sequence[int] = DEFAULT_DISCRIMINANTS,
    dprime: Sequence[int] = DEFAULT_DPRIME,
    nmax: int = 10**7,
    c_range: tuple[int, int] = (2, 7),
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    checkpoint_path: str | os.PathLike | None = None,
    resume: bool = True,
    progress: Progress | None = None,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    chunk_size: int = DEFAULT_CHUNK,
    span_layers: int = DEFAULT_SPAN_LAYERS,
    parts: tuple[str, ...] = ("part1", "part2"),
    seed: int = 1,
) -> SieveReport:
    """Compose Part I and Part II over the primes 11 <= p <= nmax, p != 13.

    ``dprime`` must be a sublist of ``discriminants`` made of fundamental
    discriminants; its splitting conditions become the congruence wheel and
    the rest of the list is checked prime by prime.
    """
    discriminants = [int(d) for d in discriminants]
    dprime = [int(d) for d in dprime]
    if not set(dprime) <= set(discriminants):
        raise ValueError("dprime must be a subset of the discriminant list")
    if nmax < LOWEST_PRIME:
        raise ValueError("nmax must be at least 11")
    mode = "+".join(parts)
    config = run_config(discriminants, dprime, nmax, c_range, budget,
                        sieve_limit, chunk_size, span_layers, mode, seed)
    checkpoint = None
    if checkpoint_path is not None:
        checkpoint = Checkpoint(checkpoint_path, config_fingerprint(config), resume=resume)

    timing: dict[str, float] = {}
    stats: dict = {}
    L, good, bad, incomplete, verybad = list(CLASS_NUMBER_ONE), [], [], [], []

    if "part1" in parts:
        t0 = time.perf_counter()
        p1 = bad_discrim_and_primes(discriminants, nmax, c_range, budget, workers,
                                    checkpoint, progress, sieve_limit, seed)
        timing["part1_seconds"] = round(time.perf_counter() - t0, 3)
        L, good, bad, incomplete = p1.L, p1.good, p1.bad, p1.incomplete
        stats["part1"] = {
            "discriminants_processed": len(p1.factors),
            "r_d_prime_factors": {str(d): [str(p) for p in ps]
                                  for d, ps in p1.factors.items() if ps},
        }

    if "part2" in parts:
        t0 = time.perf_counter()
        wheel = wheel_for_discriminants(dprime)
        check_list = [d for d in discriminants if d not in dprime]
        found = very_bad_primes(wheel, check_list, LOWEST_PRIME, nmax + 1, workers,
                                chunk_size, span_layers, checkpoint, progress)
        verybad = [p for p in found if _in_scope(p, nmax)]
        timing["part2_seconds"] = round(time.perf_counter() - t0, 3)
        stats["part2"] = {"modulus": str(wheel.modulus), "residues": len(wheel),
                          "check_list_size": len(check_list)}

    stats["timing"] = timing
    return SieveReport(config, L, good, bad, verybad, incomplete, stats)

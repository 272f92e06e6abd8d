"""Command-line entry point ``cartan-sieve``.

Exit codes: 0 success, 2 bad usage, 3 checkpoint/config mismatch,
4 I/O failure, 5 incomplete factorization, 6 a numerical check failed.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field

from .checkpoint import CheckpointMismatch

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CHECKPOINT = 3
EXIT_IO = 4
EXIT_INCOMPLETE = 5
EXIT_CHECK_FAILED = 6

WORKERS_ENV = "CARTAN_SIEVE_WORKERS"

log = logging.getLogger("cartan_sieve")


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()] if text.strip() else []


@dataclass
class RunConfig:
    nmax: int = 10**6
    dmax_class_number: int = 4
    extra_discriminants: list[int] = field(default_factory=lambda: [-87])
    dprime: list[int] | None = None
    c_max: int = 7
    workers: int = 1
    checkpoint: str | None = None
    out: str | None = None
    resume: bool = False
    budget: int = 200_000
    seed: int = 1

    def discriminants(self) -> list[int]:
        from .quadforms import TABLE_DISCRIMINANTS, discriminant_table

        out: list[int] = []
        if self.dmax_class_number <= 4:
            for h in range(1, self.dmax_class_number + 1):
                out += TABLE_DISCRIMINANTS[h]
        else:
            for h, ds in discriminant_table(self.dmax_class_number).items():
                out += ds
        for d in self.extra_discriminants:
            if d not in out:
                out.append(d)
        return out

    def dprime_list(self) -> list[int]:
        from .quadforms import DEFAULT_DPRIME

        return list(DEFAULT_DPRIME) if self.dprime is None else list(self.dprime)

    def validate(self) -> None:
        if self.nmax < 11:
            raise ValueError("--nmax must be at least 11")
        if self.workers < 1:
            raise ValueError("--workers must be at least 1")
        if self.c_max < 2:
            raise ValueError("--c-max must be at least 2")
        if not 1 <= self.dmax_class_number <= 6:
            raise ValueError("--dmax-class-number must be between 1 and 6")
        missing = set(self.dprime_list()) - set(self.discriminants())
        if missing:
            raise ValueError(f"--dprime entries not in the discriminant list: {sorted(missing)}")


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _add_run_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--nmax", type=int, default=10**6, help="upper end N of the prime range [11, N]")
    sp.add_argument("--dmax-class-number", type=int, default=4,
                    help="take all fundamental discriminants of class number up to this")
    sp.add_argument("--extra-discriminants", type=_int_list, default=[-87],
                    help="comma separated discriminants appended to the list (default -87)")
    sp.add_argument("--dprime", type=_int_list, default=None,
                    help="comma separated sublist used to build the congruence wheel")
    sp.add_argument("--c-max", type=int, default=7, help="conductors c = 2..c-max in r_D")
    sp.add_argument("--workers", type=int, default=_default_workers(),
                    help=f"worker processes (default ${WORKERS_ENV} or 1)")
    sp.add_argument("--checkpoint", help="checkpoint file")
    sp.add_argument("--resume", action="store_true", help="continue from an existing checkpoint")
    sp.add_argument("--out", help="write the JSON report here instead of stdout")
    sp.add_argument("--budget", type=int, default=200_000, help="Pollard-rho iteration budget")
    sp.add_argument("--seed", type=int, default=1, help="first Pollard-rho polynomial constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cartan-sieve",
                                     description="Prime sieve for trivial rational points.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("sieve-part1", "resultant criterion only (L, good, bad)"),
                       ("sieve-part2", "congruence wheel scan only (verybad)"),
                       ("full-run", "both parts")):
        _add_run_flags(sub.add_parser(name, help=text))

    sp = sub.add_parser("bounds", help="evaluate height bounds at p, or the crossover primes")
    sp.add_argument("target", help='a number p >= 3, or "crossovers"')

    sp = sub.add_parser("classpoly", help="print the class polynomial of D")
    sp.add_argument("discriminant", type=int)
    sp.add_argument("--cache", help="directory of the polynomial cache")

    sp = sub.add_parser("verify-units", help="random checks of the Siegel-function estimates")
    sp.add_argument("--samples", type=int, default=1000,
                    help="base sample count (pu uses a tenth, llogz ten times as many)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", help="write per-sample rows to this CSV file")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        nmax=args.nmax,
        dmax_class_number=args.dmax_class_number,
        extra_discriminants=args.extra_discriminants,
        dprime=args.dprime,
        c_max=args.c_max,
        workers=args.workers,
        checkpoint=args.checkpoint,
        out=args.out,
        resume=args.resume,
        budget=args.budget,
        seed=args.seed,
    )


def _run_sieve(args, parts: tuple[str, ...]) -> int:
    from .sieve import full_run

    cfg = config_from_args(args)
    try:
        cfg.validate()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.checkpoint and os.path.exists(cfg.checkpoint) and not cfg.resume:
        print(f"error: checkpoint {cfg.checkpoint} exists; pass --resume or remove it",
              file=sys.stderr)
        return EXIT_CHECKPOINT
    try:
        report = full_run(cfg.discriminants(), cfg.dprime_list(), cfg.nmax,
                          c_range=(2, cfg.c_max), budget=cfg.budget, workers=cfg.workers,
                          checkpoint_path=cfg.checkpoint, resume=cfg.resume, parts=parts, seed=cfg.seed)
        if cfg.out:
            report.write(cfg.out)
        else:
            sys.stdout.write(report.to_json())
    except CheckpointMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if report.incomplete:
        for d, residual in report.incomplete:
            print(f"incomplete factorization for D={d}, residual {residual}", file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK


def _bounds(args) -> int:
    from . import bounds

    if args.target == "crossovers":
        r2 = bounds.crossover_r2(detail=True)
        r3 = bounds.crossover_r3(detail=True)
        rhs, lim, ok = bounds.r2_auxiliary_check()
        print(f"{'name':<12} {'threshold':>16} {'monotone_from':>14}")
        print(f"{'r2':<12} {r2.threshold:>16d} {r2.monotone_from:>14d}")
        print(f"{'r3':<12} {r3.threshold:>16d} {r3.monotone_from:>14d}")
        print(f"aux r2 rhs at 1e7: {rhs:.6g} <= {lim:.6g}: {'pass' if ok else 'FAIL'}")
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    try:
        p = float(args.target)
        rows = bounds.evaluate_bounds(p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{'name':<20} {'value':>22}  formula")
    for r in rows:
        print(f"{r.name:<20} {r.value:>22.10g}  {r.formula}")
    return EXIT_OK


def _classpoly(args) -> int:
    from .classpoly import ClassPolynomialCache, class_polynomial, format_record

    try:
        cache = ClassPolynomialCache(args.cache) if args.cache else None
        cp = class_polynomial(args.discriminant, cache=cache)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(format_record(args.discriminant, cp.poly))
    return EXIT_OK


def _verify_units(args) -> int:
    from .units import verify_units

    n = args.samples
    try:
        rows = verify_units(pga_samples=n, pu_samples=max(1, n // 10), llogz_samples=10 * n,
                            loglog_samples=n, seed=args.seed, csv_path=args.csv)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{'check':<8} {'samples':>8} {'violations':>10} {'worst lhs/bound':>16}  result")
    for r in rows:
        print(f"{r.name:<8} {r.samples:>8} {r.violations:>10} {r.worst_ratio:>16.6f}  "
              f"{'pass' if r.passed else 'FAIL'}")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_CHECK_FAILED


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "sieve-part1":
        return _run_sieve(args, ("part1",))
    if args.command == "sieve-part2":
        return _run_sieve(args, ("part2",))
    if args.command == "full-run":
        return _run_sieve(args, ("part1", "part2"))
    if args.command == "bounds":
        return _bounds(args)
    if args.command == "classpoly":
        return _classpoly(args)
    return _verify_units(args)


if __name__ == "__main__":
    sys.exit(main())

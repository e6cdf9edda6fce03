#!/usr/bin/env python3
"""
Verification runner for the framed deformation ring computations

Runs a suite of exact checks and writes a JSON report to stdout or a file.
Progress and status lines go to stderr.
"""

import argparse
import logging
import sys
from colorama import init, Fore, Style
from . import __version__
from .config import Config, MAX_CAP
from .verification import FAMILY_SUITES, SUITES, Grid, Verifier, dump_report, plan_suite

# Initialize colorama for colored output
init()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def setup_logging():
    """Setup logging configuration"""
    log_level = getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # stdout carries the report, so logs go to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)
    root_logger.addHandler(console_handler)

    if Config.LOG_FILE:
        file_handler = logging.FileHandler(Config.LOG_FILE)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    return root_logger


def _err(text: str = ""):
    print(text, file=sys.stderr)


def print_banner(suite: str, grid: Grid, jobs: int):
    """Print application banner"""
    banner = f"""
{Fore.CYAN}╔══════════════════════════════════════════════════════════════╗
║              FRAMED DEFORMATION RING VERIFIER                ║
║                   exact arithmetic, v{__version__:<24}║
╚══════════════════════════════════════════════════════════════╝{Style.RESET_ALL}

{Fore.GREEN}Configuration:{Style.RESET_ALL}
  • Suite: {suite}
  • Truncation cap: {grid.cap} (recheck: {grid.recheck_cap or '-'})
  • lambda: {list(grid.lambdas)}  mu: {list(grid.mus)}  kappa: {list(grid.kappas)}
  • Families: {', '.join(grid.families) if grid.families else 'all'}
  • Jobs: {jobs}
"""
    _err(banner)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python -m src.main", description="Exact verification of the deformation ring computations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command")
    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--cap", type=int, default=None, help=f"truncation cap, 1..{MAX_CAP}")
    verify.add_argument("--lambda", dest="lam", type=int, default=None)
    verify.add_argument("--mu", type=int, default=None)
    verify.add_argument("--kappa", type=int, default=None)
    verify.add_argument("--family", choices=("punkte1", "punkte2"), default=None)
    verify.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    verify.add_argument("--jobs", type=int, default=None)
    return parser


def grid_from_args(args) -> Grid:
    cap = args.cap if args.cap is not None else Config.VERIFY_CAP
    if not 1 <= cap <= MAX_CAP:
        raise UsageError(f"--cap must be in 1..{MAX_CAP}, got {cap}")
    if args.jobs is not None and args.jobs < 1:
        raise UsageError(f"--jobs must be at least 1, got {args.jobs}")
    recheck = Config.VERIFY_RECHECK_CAP if args.suite == "all" else None
    if args.suite == "all" and any(v not in (None, 0, 1) for v in (args.lam, args.mu, args.kappa)):
        raise UsageError("verify all runs on the {0,1} parameter grid")
    if recheck == cap:
        recheck = None

    def values(given):
        return (given,) if given is not None else (0, 1)

    grid = Grid(
        cap=cap,
        recheck_cap=recheck,
        lambdas=values(args.lam),
        mus=values(args.mu),
        kappas=values(args.kappa),
        families=(args.family,) if args.family else None,
    )
    if args.suite in FAMILY_SUITES + ("all",) and not grid.point_families():
        raise UsageError(f"--family {args.family or 'any'} admits no point for --mu {args.mu}: "
                         "punkte1 needs mu = 0, punkte2 a nonzero mu")
    suites = SUITES if args.suite == "all" else (args.suite,)
    if not any(plan_suite(name, grid) for name in suites):
        raise UsageError(f"No checks to run for verify {args.suite} with these options")
    return grid


def print_status(report):
    for record in report["checks"]:
        if record["status"] == "pass":
            mark = f"{Fore.GREEN}✅"
        else:
            mark = f"{Fore.RED}❌"
        _err(f"  {mark} {record['check']} {record['params']}{Style.RESET_ALL}")

    summary = report["summary"]
    _err(f"\n{Fore.GREEN}Verification Results:{Style.RESET_ALL}")
    _err(f"  • Total Checks: {summary['total_checks']}")
    _err(f"  • Passed: {Fore.GREEN}{summary['passed']}{Style.RESET_ALL}")
    _err(f"  • Failed: {Fore.RED}{summary['failed']}{Style.RESET_ALL}")
    _err(f"  • Errors: {Fore.YELLOW}{summary['errors']}{Style.RESET_ALL}")
    _err(f"  • Time: {report['timing']['total_seconds']}s")


def run(argv=None) -> int:
    """Parse arguments, run the suite and return the exit code"""
    try:
        args = build_parser().parse_args(argv)
        if args.command != "verify":
            raise UsageError("expected a command: verify <suite>")
        Config.validate()
        grid = grid_from_args(args)
    except (UsageError, ValueError) as e:
        _err(f"{Fore.RED}❌ Usage Error: {e}{Style.RESET_ALL}")
        return EXIT_USAGE

    logger = logging.getLogger(__name__)
    verifier = Verifier(cap=grid.cap, jobs=args.jobs)
    print_banner(args.suite, grid, verifier.jobs)

    try:
        report = verifier.verify(args.suite, grid)
    except KeyboardInterrupt:
        _err(f"\n{Fore.YELLOW}Verification interrupted by user.{Style.RESET_ALL}")
        return EXIT_INTERRUPTED

    text = dump_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        logger.info(f"Report written to {args.out}")
    else:
        sys.stdout.write(text + "\n")

    print_status(report)
    if verifier.all_passed:
        _err(f"\n{Fore.GREEN}✅ All checks passed.{Style.RESET_ALL}")
        return EXIT_OK
    _err(f"\n{Fore.RED}❌ {report['summary']['failed']} check(s) failed.{Style.RESET_ALL}")
    return EXIT_FAILED


def main():
    """Main application entry point"""
    try:
        setup_logging()
        sys.exit(run())
    except KeyboardInterrupt:
        _err(f"\n{Fore.YELLOW}Application interrupted by user.{Style.RESET_ALL}")
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        logging.getLogger(__name__).error(f"Unexpected error: {e}")
        _err(f"{Fore.RED}❌ Unexpected error: {e}{Style.RESET_ALL}")
        sys.exit(EXIT_FAILED)


if __name__ == "__main__":
    main()

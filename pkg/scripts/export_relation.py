#!/usr/bin/env python3
"""
Export the relation entries f11, f12, f21, f22 in canonical text form.

Usage: python -m scripts.export_relation [--lambda L] [--mu M] [--kappa K] [--cap N] [--out FILE]

The output is a JSON object keyed by entry name, suitable for diffing two caps
or two parameter triples against each other.
"""

import argparse
import json
import logging
import sys
import time
from colorama import init, Fore, Style

from src.config import Config, MAX_CAP
from src.deform import DeformParams, PreconditionError, compute_relation, origin_checks
from src.verification import parse_scalar

init()

logging.basicConfig(level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO), stream=sys.stderr)
logger = logging.getLogger("export_relation")

parser = argparse.ArgumentParser(description="Export the truncated relation in canonical form")
parser.add_argument("--lambda", dest="lam", default="0")
parser.add_argument("--mu", default="0")
parser.add_argument("--kappa", default="0")
parser.add_argument("--cap", type=int, default=Config.VERIFY_CAP)
parser.add_argument("--out", default=None)
args = parser.parse_args()

if not 1 <= args.cap <= MAX_CAP:
    print(f"{Fore.RED}--cap must be between 1 and {MAX_CAP}{Style.RESET_ALL}", file=sys.stderr)
    sys.exit(2)

try:
    params = DeformParams(parse_scalar(args.lam), parse_scalar(args.mu), parse_scalar(args.kappa), args.cap)
except (ValueError, PreconditionError) as e:
    print(f"{Fore.RED}Invalid parameters: {e}{Style.RESET_ALL}", file=sys.stderr)
    sys.exit(2)

print(f"Computing relation at {params.to_json()}", file=sys.stderr)
started = time.time()
rel = compute_relation(params)
elapsed = time.time() - started
logger.info(f"Relation computed in {elapsed:.2f}s, sizes {rel.sizes()}")

checks = origin_checks(params, rel)
for name, ok in sorted(checks.items()):
    colour = Fore.GREEN if ok else Fore.RED
    print(f"  {name}: {colour}{'ok' if ok else 'FAILED'}{Style.RESET_ALL}", file=sys.stderr)

payload = {"parameters": params.to_json(), "origin_checks": checks, "entries": rel.canonical()}
text = json.dumps(payload, indent=2, sort_keys=True)
if args.out:
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
    print(f"\n{Fore.GREEN}Written to {args.out}{Style.RESET_ALL}", file=sys.stderr)
else:
    sys.stdout.write(text + "\n")

sys.exit(0 if all(checks.values()) else 1)

#!/usr/bin/env python3
"""Run the full verification pipeline over the shipped fixture corpus.

Usage: python scripts/run_thesis_all.py [--depth N] [--format text|json]
"""

import argparse
import os
import sys

from catenv.cli import main as cli_main

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")

JOBS = [
    ("thesis", "edge.cat"),
    ("thesis", "two.cat"),
    ("thesis", "kgraph-acyclic.cat"),
    ("thesis", "free2.cat"),
    ("lcm", "n2.cat"),
    ("groupoid", "pairgpd.gpd"),
    ("coaction", "t2.grad"),
    ("coaction", "t3.grad"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args()
    worst = 0
    for command, name in JOBS:
        print(f"===== {command} {name}")
        code = cli_main([command, os.path.join(FIXDIR, name),
                         "--depth", str(args.depth), "--format", args.format])
        print(f"===== exit {code}\n")
        worst = max(worst, 0 if code == 3 else code)
    return worst


if __name__ == "__main__":
    sys.exit(main())

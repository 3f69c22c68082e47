#!/usr/bin/env python3
"""Run the `compute` pipeline over every session file in sessions/.

Usage: python scripts/run_examples.py [--format json|text] [--seed N]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from jumploci.cli import main as cli_main  # noqa: E402

REPO = Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    worst = 0
    for session in sorted((REPO / "sessions").glob("*.session")):
        print(f"== {session.name} ==")
        code = cli_main(["compute", "--input", str(session),
                         "--format", args.format,
                         "--seed", str(args.seed)])
        print()
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())

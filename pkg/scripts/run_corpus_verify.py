"""Run `dissect verify` over every JSON file in a directory and tabulate the outcome."""
import argparse
import io
import sys
import time
from collections import Counter
from pathlib import Path

from dissect.cli import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("directory", type=Path)
    ap.add_argument("--quiet", action="store_true", help="only print the summary")
    a = ap.parse_args()

    codes = Counter()
    start = time.perf_counter()
    for path in sorted(a.directory.glob("*.json")):
        out, err = io.StringIO(), io.StringIO()
        code = run(["verify", str(path)], out, err)
        codes[code] += 1
        if code and not a.quiet:
            print(f"--- {path.name}: exit {code}\n{out.getvalue()}{err.getvalue()}")
    elapsed = time.perf_counter() - start
    total = sum(codes.values())
    print(f"{total} files in {elapsed:.1f} s; exit codes: {dict(sorted(codes.items()))}")
    sys.exit(0 if set(codes) <= {0} else 1)


if __name__ == "__main__":
    main()

"""Run the built-in corpus and print a pass/fail table with timings."""
from __future__ import annotations

import argparse
import sys
import time

from stringcat.corpus import run_corpus


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument('--budget', type=int, default=None)
    p.add_argument('--only', nargs='*', help='entry ids to run')
    args = p.parse_args()
    from stringcat.corpus import load_corpus
    entries = load_corpus()
    if args.only:
        entries = [e for e in entries if e.id in args.only]
    start = time.perf_counter()
    results = run_corpus(entries, args.budget)
    total = time.perf_counter() - start
    for r in results:
        print(f"{'pass' if r.passed else 'FAIL'}  {r.entry.id:<24} {r.entry.doctrine:<26} "
              f'{r.verdict}  [{r.entry.cite}]')
    failed = [r for r in results if not r.passed]
    print(f'{len(results) - len(failed)}/{len(results)} entries pass in {total:.2f} s')
    return 1 if failed else 0


if __name__ == '__main__':
    sys.exit(main())

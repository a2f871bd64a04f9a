"""Evaluate random axiom instances of every doctrine in the models.

    python3 scripts/fuzz_soundness.py --trials 1000 --seed 0
"""
from __future__ import annotations

import argparse
import sys
import time

from stringcat.doctrine import DOCTRINES
from stringcat.errors import SoundnessViolation
from stringcat.models import check_soundness


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument('--trials', type=int, default=1000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--models', nargs='*', default=['Mat[rat]', 'RelPlus'])
    p.add_argument('--decide', action='store_true',
                   help='also decide each pair and count Equal verdicts')
    args = p.parse_args()
    bad = 0
    for name in DOCTRINES:
        for model in args.models:
            t = time.perf_counter()
            try:
                rep = check_soundness(name, model, args.trials, args.seed, args.decide)
            except SoundnessViolation as e:
                print(f'FAIL  {name} in {model}: {e}')
                bad += 1
                continue
            extra = f', {rep.decided_equal} decided Equal' if args.decide else ''
            print(f'ok    {rep}{extra}  ({time.perf_counter() - t:.1f} s)')
    return 1 if bad else 0


if __name__ == '__main__':
    sys.exit(main())

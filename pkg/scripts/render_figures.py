"""Render the representative figures as SVG and TikZ.

    python3 scripts/render_figures.py                 # into ./figures
    python3 scripts/render_figures.py --out tests/golden   # refresh golden files
"""
from __future__ import annotations

import argparse
from pathlib import Path

from stringcat.figures import FIGURES
from stringcat.render import render


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument('--out', type=Path, default=Path('figures'))
    p.add_argument('--winding', action='store_true')
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for fig in FIGURES:
        d = fig.diagram()
        for fmt, ext in (('svg', 'svg'), ('tikz', 'tex')):
            path = args.out / f'{fig.name}.{ext}'
            path.write_text(render(d, fmt, args.winding))
            print(path)


if __name__ == '__main__':
    main()

"""Resum the U(1)-RC series over catalog links and compare with the colored Jones expansion.

    python scripts/resummation_table.py --order 6
"""

import argparse
import time
from dataclasses import dataclass, field
from itertools import product

from rcjones.braid import close, parse_braid
from rcjones.cli import CATALOG
from rcjones.verify import resummation_check


@dataclass
class ResummationConfig:
    order: int = 6
    links: tuple[str, ...] = ("unknot", "trefoil", "hopf", "t24")
    max_color: int = 3
    # T(2,4) is slow at every color pair; keep its grid small
    per_link_colors: dict = field(default_factory=lambda: {"t24": [(2, 2)]})


def color_vectors(cfg: ResummationConfig, name: str, L: int):
    if name in cfg.per_link_colors:
        return cfg.per_link_colors[name]
    return list(product(range(1, cfg.max_color + 1), repeat=L))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=ResummationConfig.order)
    ap.add_argument("--max-color", type=int, default=ResummationConfig.max_color)
    ap.add_argument("--links", nargs="+", default=list(ResummationConfig.links))
    args = ap.parse_args()
    cfg = ResummationConfig(order=args.order, links=tuple(args.links), max_color=args.max_color)
    print(f"{'link':10s} {'colors':10s} {'pass':5s} {'seconds':>8s}")
    for name in cfg.links:
        b = parse_braid(CATALOG[name].braid)
        for colors in color_vectors(cfg, name, close(b).L):
            start = time.perf_counter()
            rep = resummation_check(b, colors, cfg.order)
            print(f"{name:10s} {str(list(colors)):10s} {str(rep.passed):5s} {time.perf_counter() - start:8.2f}")


if __name__ == "__main__":
    main()

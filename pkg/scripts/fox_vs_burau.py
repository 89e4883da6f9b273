"""Compare the Burau and Fox-calculus Alexander polynomials on every short braid word.

    python scripts/fox_vs_burau.py --strands 3 --crossings 6
"""

import argparse
import time
from dataclasses import dataclass
from itertools import product

from rcjones.braid import BraidWord, close
from rcjones.burau import alexander_conway
from rcjones.verify import fox_alexander


@dataclass
class EnumerationConfig:
    strands: int = 3
    crossings: int = 6


def knot_words(cfg: EnumerationConfig):
    yield BraidWord(1)
    for n in range(2, cfg.strands + 1):
        letters = [w for p in range(1, n) for w in (p, -p)]
        for length in range(1, cfg.crossings + 1):
            for word in product(letters, repeat=length):
                b = BraidWord.from_word(n, word)
                if close(b).L == 1:
                    yield b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--strands", type=int, default=EnumerationConfig.strands)
    ap.add_argument("--crossings", type=int, default=EnumerationConfig.crossings)
    args = ap.parse_args()
    cfg = EnumerationConfig(args.strands, args.crossings)
    start = time.perf_counter()
    total = mismatches = 0
    distinct = set()
    for b in knot_words(cfg):
        total += 1
        burau = alexander_conway(b).delta
        if burau != fox_alexander(b):
            mismatches += 1
            print(f"mismatch: {b}")
        distinct.add(burau.format_text())
    print(f"{total} knot closures, {mismatches} mismatches, {len(distinct)} distinct polynomials, "
          f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()

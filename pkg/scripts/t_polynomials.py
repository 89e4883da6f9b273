"""Print the crossing polynomials T^{(+-)}_{j,k}(m1, m2, n) and the C_{k,n} table.

    python scripts/t_polynomials.py --kmax 3
"""

import argparse
from dataclasses import dataclass

from rcjones.algebra import rat_str
from rcjones.u1rc import gen_c_table, gen_t_polys


@dataclass
class TableConfig:
    kmax: int = 3
    sign: int = 1


def format_poly(coeffs: dict) -> str:
    parts = []
    for (a, b, c), v in sorted(coeffs.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
        mono = " ".join(f"{x}^{e}" if e > 1 else x for x, e in zip(("m1", "m2", "n"), (a, b, c)) if e)
        parts.append(f"{rat_str(v)}" + (f" {mono}" if mono else ""))
    return " + ".join(parts) or "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=TableConfig.kmax)
    ap.add_argument("--sign", type=int, choices=(1, -1), default=TableConfig.sign)
    args = ap.parse_args()
    cfg = TableConfig(args.kmax, args.sign)
    table = gen_t_polys(cfg.kmax)
    for (sign, j, k), poly in sorted(table.items()):
        if sign == cfg.sign:
            print(f"T({sign:+d})_{j},{k} = {format_poly(poly.coeffs)}")
    print()
    for (k, n), v in sorted(gen_c_table(cfg.kmax).items()):
        print(f"C_{k},{n} = {rat_str(v)}")


if __name__ == "__main__":
    main()

"""Gram determinants of the four named families against their closed forms.

    python3 scripts/gram_families.py --max-n 7
"""

import argparse

from symblob.gram import FAMILY_OF_LABEL, gram_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()
    for fam, lab, lo in FAMILY_OF_LABEL:
        for n in range(lo, args.max_n + 1):
            r = gram_report(n, lab(n))
            comps = ", ".join(f"{k.rsplit('.', 1)[1]}:{v}" for k, v in sorted(r.comparisons.items()))
            print(f"{fam:7s} n={n} dim={r.dimension}  {comps}", flush=True)
    for n, l, param in ((1, 0, "gmp"), (2, 0, "gmp"), (1, 0, "generic6"), (2, 0, "generic6")):
        r = gram_report(n, l, param)
        print(f"label 0 n={n} {param}: {r.comparisons}")


if __name__ == "__main__":
    main()

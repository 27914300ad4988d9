"""Witness points for every covering edge of the coarse label order.

    python3 scripts/minimality.py 2 3 4 5
"""

import sys

from symblob.poset import coarse_poset, minimality_witnesses

for n in map(int, sys.argv[1:] or ["2", "3", "4"]):
    po = coarse_poset(n)
    r = minimality_witnesses(n)
    print(f"n={n} covers={len(po.covers)} minimal={po.minimal()} maximal={po.maximal()} passed={r.passed}")
    for (a, b), w in sorted(r.witnesses.items()):
        print(f"  {a:>3} > {b:<3} via {w['condition']} ({w['source']}), hom dim {w['hom_dim']}")
    for a, b in r.missing:
        print(f"  {a:>3} > {b:<3} NO WITNESS")

"""Hom dimensions of every map family at every condition point.

    python3 scripts/hom_pattern.py 4 5
"""

import sys

from symblob.embeddings import embedding_pattern

for n in map(int, sys.argv[1:] or ["4", "5"]):
    r = embedding_pattern(n)
    print(f"n={n}  matches computed: {r.matches_computed}  matches stated: {r.matches_stated}")
    for row in r.rows:
        hits = [c for c, d in row["hom_dims"].items() if d]
        print(f"  {row['id']:40s} S({row['src']}) -> S({row['dst']})  nonzero at {hits}"
              f"  stated [{row['stated_condition']}]")

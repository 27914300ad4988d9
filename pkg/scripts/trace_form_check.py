"""Which factor of the rank-2 label-0 Gram determinant marks a special locus?

The trace form of b_2 is computed at random points on each candidate
hypersurface and its rank compared with the full dimension 19.
"""

import random

from symblob import cells as C
from symblob.gram import trace_form_rank
from symblob.ring import numeric_params

P = 10007
rng = random.Random(0)
for trial in range(4):
    d, dL, dR, kL, kR = (rng.randrange(2, P) for _ in range(5))
    loci = {
        "derived  kLR = dL kR + kL dR - d dL dR": (dL * kR + kL * dR - d * dL * dR) % P,
        "quoted   kLR = dL kR + kL dR - d kL kR": (dL * kR + kL * dR - d * kL * kR) % P,
        "generic": rng.randrange(2, P),
    }
    for name, kLR in loci.items():
        ps = numeric_params([d, dL, dR, kL, kR, kLR], P)
        print(f"{trial} {name:42s} trace-form rank {trace_form_rank(2, ps):2d}/19, "
              f"Gram rank {C.gram_rank(C.cell_module(2, 0), ps)}/4")

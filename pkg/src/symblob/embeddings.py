"""Maps between standard modules at vanishing quantum numbers.

Each family is a map ``S(src) -> S(dst)`` together with the single quantum
number whose vanishing should produce it.  Two readings are kept: ``stated``
(as the families are usually quoted) and ``computed`` (what the hom-space
computation actually shows).  They differ only for the two maps out of the
trivial module into ``S(n-3)`` and ``S(-(n-3))``, whose conditions trade places.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import cells as C
from .conditions import QFactor, generic_unit_point, gmp_at, point_on
from .errors import PreconditionError
from .linalg import det_bareiss
from .ring import DEFAULT_PRIME, params_from, qnum

CONDITIONS = ("w1-1", "w2-1", "w1+w2-n+2", "-w1+w2+n-2", "w1-w2+n-2", "w1+w2+n-2")


@dataclass(frozen=True)
class MapFamily:
    id: str
    src: str
    dst: str
    stated: str
    computed: str
    min_rank: int = 4

    def labels(self, n: int) -> tuple[int, int]:
        return _eval_label(self.src, n), _eval_label(self.dst, n)


def _eval_label(expr: str, n: int) -> int:
    import sympy

    return int(sympy.sympify(expr).subs(sympy.Symbol("n"), n))


FAMILIES = (
    MapFamily("emb.trivial_to_minus_n_minus_3", "-n", "-(n-3)", "w1-1", "w2-1"),
    MapFamily("emb.minus_n_minus_1_to_n_minus_4", "-(n-1)", "n-4", "w1-1", "w1-1", 5),
    MapFamily("emb.trivial_to_n_minus_3", "-n", "n-3", "w2-1", "w1-1"),
    MapFamily("emb.n_minus_1_to_n_minus_4", "n-1", "n-4", "w2-1", "w2-1", 5),
    MapFamily("emb.trivial_to_minus_n_minus_2", "-n", "-(n-2)", "w1+w2-n+2", "w1+w2-n+2", 3),
    MapFamily("emb.minus_n_plus_1_to_minus_n_minus_3", "-n+1", "-(n-3)", "-w1+w2+n-2", "-w1+w2+n-2"),
    MapFamily("emb.n_minus_1_to_n_minus_3", "n-1", "n-3", "w1-w2+n-2", "w1-w2+n-2"),
    MapFamily("emb.n_minus_2_to_n_minus_4", "n-2", "n-4", "w1+w2+n-2", "w1+w2+n-2", 5),
)


@dataclass
class PatternReport:
    n: int
    prime: int
    rows: list[dict] = field(default_factory=list)

    @property
    def matches_computed(self) -> bool:
        return all(r["agrees_computed"] for r in self.rows)

    @property
    def matches_stated(self) -> bool:
        return all(r["agrees_stated"] for r in self.rows)

    def to_json(self) -> dict:
        return {"n": self.n, "prime": self.prime, "matches_computed": self.matches_computed,
                "matches_stated": self.matches_stated, "rows": self.rows}


def condition_points(n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> dict[str, dict[str, int]]:
    """One point per condition where it alone vanishes, plus a generic point."""
    rng = random.Random(seed)
    pts = {}
    for c in CONDITIONS:
        pts[c] = point_on(c, rng, p, n=n, avoid=tuple(x for x in CONDITIONS if x != c))
    pts["generic"] = generic_unit_point(rng, p, n=n, avoid=CONDITIONS)
    return pts


def embedding_pattern(n: int, seed: int = 0, p: int = DEFAULT_PRIME) -> PatternReport:
    """hom dims for every family at every condition point."""
    pts = condition_points(n, seed, p)
    report = PatternReport(n, p)
    for fam in FAMILIES:
        if n < fam.min_rank:
            continue
        a, b = fam.labels(n)
        src, dst = C.cell_module(n, a), C.cell_module(n, b)
        dims = {c: C.hom_space_dim(src, dst, gmp_at(pt, n, p)) for c, pt in pts.items()}
        stated = {c: int(c == fam.stated) for c in pts}
        computed = {c: int(c == fam.computed) for c in pts}
        report.rows.append({"id": fam.id, "src": a, "dst": b, "hom_dims": dims,
                            "stated_condition": fam.stated, "computed_condition": fam.computed,
                            "agrees_stated": dims == stated, "agrees_computed": dims == computed})
    return report


# ---------------------------------------------------------------------------
# the constraint matrix for S(n-1) -> S(n-3)


def constraint_matrix(n: int, ps=None):
    """Coefficient matrix of the conditions for ``e v = delta_L v`` and ``E_k v = 0`` otherwise.

    Coordinates are those of the monomial basis of ``S(n-3)``; row 0 comes
    from ``e``, rows 1..n-1 from ``e_i`` and row n from ``f``, keeping in each
    case the one coordinate the generator does not kill.
    """
    if n < 4:
        raise PreconditionError("the S(n-3) family needs n >= 4")
    ps = ps or params_from("gmp", n)
    m = C.family_module(n, "n-3")
    A = [m.action_matrix(k, ps) for k in range(n + 1)]
    rows = [[A[0][0][j] - (ps.delta_L if j == 0 else 0) for j in range(m.dim)]]
    rows += [list(A[i][i]) for i in range(1, n)]
    rows.append(list(A[n][n]))
    return rows


def embedding_condition_det(n: int):
    """(determinant, dict of comparisons) for the S(n-1) -> S(n-3) system."""
    ps = params_from("gmp", n)
    det = det_bareiss(constraint_matrix(n, ps))
    d, dL, dR, kL, kR, _ = ps.values()
    expansion = -dR * kL * qnum(n - 1) + dL * dR * qnum(n - 2) + kL * kR * qnum(n - 2) - dL * kR * qnum(n - 3)
    variants = {"w1-w2+n-2": QFactor.parse("w1-w2+n-2", n).scalar(), "w1-w1+n-2": qnum(n - 2)}
    out = {"expansion": _sign_match(det, expansion)}
    out.update({k: _sign_match(det, v) for k, v in variants.items()})
    return det, out


def _sign_match(x, y) -> str:
    if x == y:
        return "+"
    if x == -y:
        return "-"
    return "no"

"""Acceptance checks, one function per criterion.

Each function returns a :class:`CriterionResult` made of named sub-checks.
Nothing here relaxes a comparison to make it pass: a sub-check that fails
stays failed and its detail carries the computed value.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import cells as C
from . import diagrams as dg
from . import oracles
from .algebra import StructureTable, dimension
from .conditions import generic_unit_point, gmp_at, point_on
from .embeddings import CONDITIONS, embedding_condition_det, embedding_pattern
from .gram import gram_report
from .poset import chain_poset, coarse_poset, minimality_witnesses, poset_consistency
from .presentation import enumerate_reduced, verify_isomorphism
from .quotients import (genericity_counterexample, kappa_check, strip_counterexample, verify_even_quotient,
                        verify_odd_quotient)
from .ring import DEFAULT_PRIME, ParamSet, params_from, random_unit_params, rescale

SCHEMA = "symblob.acceptance.v1"

# dimension printed for b_2^x next to the sum of squares of its standards
PRINTED_DIM_RANK2 = 10


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class CriterionResult:
    key: str
    title: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = ""
        if not self.passed:
            tail = " (failed: " + ", ".join(c.name for c in self.failures()) + ")"
        return f"[{status}] criterion {self.key}: {self.title}{tail}"

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "criterion": self.key, "title": self.title, "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}


# ---------------------------------------------------------------------------


def criterion_1(seed: int = 0) -> CriterionResult:
    r = CriterionResult("1", "dimension anchor dim b_1 = 5")
    t = time.perf_counter()
    d = dimension(1)
    reduced = len(enumerate_reduced(1))
    elapsed = time.perf_counter() - t
    r.add("diagram_basis", d == 5, value=d)
    r.add("reduced_monomials", reduced == 5, value=reduced)
    r.add("under_one_second", elapsed < 1.0)
    return r


def criterion_2(seed: int = 0, sample: int = 1000) -> CriterionResult:
    r = CriterionResult("2", "presentation isomorphism at n <= 4")
    for n in (1, 2, 3):
        rep = verify_isomorphism(n)
        r.add(f"n={n}.counts", rep.reduced_count == rep.diagram_count,
              reduced=rep.reduced_count, diagrams=rep.diagram_count)
        r.add(f"n={n}.bijection", rep.bijective)
        r.add(f"n={n}.exhaustive_products", not rep.failures, pairs=rep.pairs_checked, failures=rep.failures[:3])
    rep = verify_isomorphism(4, sample=sample, seed=seed)
    r.add("n=4.counts", rep.reduced_count == rep.diagram_count, reduced=rep.reduced_count,
          diagrams=rep.diagram_count)
    r.add("n=4.bijection", rep.bijective)
    r.add("n=4.sampled_products", not rep.failures and rep.pairs_checked >= 1000,
          pairs=rep.pairs_checked, failures=rep.failures[:3])
    return r


def criterion_3(seed: int = 0, max_n: int = 8, n_minus_4_max: int = 7) -> CriterionResult:
    r = CriterionResult("3", "Gram determinant formulas and oracles")
    for n, param, fid in ((1, "gmp", "gram.rank1_label0.stated"), (1, "generic6", "gram.rank1_label0.generic.stated"),
                          (2, "gmp", "gram.rank2_label0.stated"),
                          (2, "generic6", "gram.rank2_label0.generic.stated")):
        rep = gram_report(n, 0, param)
        r.add(f"{fid}@{param}", rep.sign(fid) != "no", sign=rep.sign(fid), matched=rep.matched,
              determinant=rep.determinant.to_str())
    for n in range(3, max_n + 1):
        rep = gram_report(n, -(n - 2))
        fid = "gram.minus_n_minus_2.stated"
        r.add(f"{fid}@n={n}", rep.sign(fid) != "no", sign=rep.sign(fid))
    families = [("gram.n_minus_3", lambda n: n - 3, range(4, max_n)),
                ("gram.minus_n_minus_3", lambda n: -(n - 3), range(4, max_n)),
                ("gram.n_minus_4", lambda n: n - 4, range(5, n_minus_4_max + 1))]
    for base, lab, ns in families:
        for n in ns:
            rep = gram_report(n, lab(n))
            # documented ambiguity: the stated form or its recorded variant
            r.add(f"{base}@n={n}", bool(rep.matched), matched=rep.matched,
                  signs={k: v for k, v in rep.comparisons.items()}, stated_matches=rep.matched_stated)
    tl = [oracles.check_tl(n) for n in range(3, 11)]
    r.add("oracle.tl", all(c.passed for c in tl), failed=[c.n for c in tl if not c.passed])
    for sign in "+-":
        bl = [oracles.check_blob(n, sign) for n in range(3, 9)]
        r.add(f"oracle.blob{sign}", all(c.passed for c in bl), failed=[c.n for c in bl if not c.passed])
    sy = [c for n in range(3, 9) for c in oracles.check_symplectic(n)]
    r.add("oracle.symplectic", all(c.passed for c in sy), failed=[(c.name, c.n) for c in sy if not c.passed])
    return r


def _pairs(N: int, exhaustive: bool, rng: random.Random, count: int):
    if exhaustive:
        return product(range(N), repeat=2)
    return ((rng.randrange(N), rng.randrange(N)) for _ in range(count))


def criterion_4(seed: int = 0, samples: int = 1000, confluence_trials: int = 10_000) -> CriterionResult:
    r = CriterionResult("4", "structural properties")
    rng = random.Random(seed)
    for n in (1, 2, 3, 4, 5):
        table = StructureTable(n)
        N = len(table.basis)
        exhaustive = n <= 3
        bad = 0
        if exhaustive:
            triples = product(range(N), repeat=3)
        else:
            triples = ((rng.randrange(N), rng.randrange(N), rng.randrange(N)) for _ in range(samples))
        count = 0
        for i, j, k in triples:
            w1, a = table.entry(i, j)
            w2, left = table.entry(a, k)
            w3, b = table.entry(j, k)
            w4, right = table.entry(i, b)
            count += 1
            if left != right or dg.add_weights(w1, w2) != dg.add_weights(w3, w4):
                bad += 1
        r.add(f"associativity@n={n}", bad == 0, triples=count, failures=bad)

        basis = table.basis
        bad = 0
        for _ in range(confluence_trials):
            d1, d2 = basis[rng.randrange(N)], basis[rng.randrange(N)]
            ref = dg.compose(d1, d2)
            got = dg.straighten(dg.concat(d1, d2), rng=random.Random(rng.random()), check=False)
            bad += got != ref
        r.add(f"straightening_confluence@n={n}", bad == 0, trials=confluence_trials, failures=bad)

        filt = cls = inv = exposure = raw = 0
        pairs = topquot = 0
        for i, j in _pairs(N, exhaustive, rng, samples):
            d1, d2 = basis[i], basis[j]
            res = table.entry(i, j)
            prod_d = basis[res[1]]
            pairs += 1
            tc = C.through_count(prod_d)
            if tc > min(C.through_count(d1), C.through_count(d2)):
                filt += 1
            skel = dg.concat_skeleton(d1, d2)
            topquot += skel != prod_d
            if skel.propagating_count() > min(d1.propagating_count(), d2.propagating_count()):
                raw += 1
            if tc == C.through_count(d1) and tc and C.cell_label(prod_d) != C.cell_label(d1):
                cls += 1
            flipped = dg.compose(dg.flip(d2), dg.flip(d1))
            if flipped.diagram != dg.flip(prod_d) or flipped.weight != res[0]:
                inv += 1
            if not dg.exposure_stable(d1, d2, skel):
                exposure += 1
        r.add(f"filtration@n={n}", filt == 0, pairs=pairs, failures=filt)
        r.add(f"propagating_before_topquot@n={n}", raw == 0, pairs=pairs, failures=raw,
              topquot_products=topquot)
        r.add(f"cell_class_preserved@n={n}", cls == 0, pairs=pairs, failures=cls)
        r.add(f"involution_antimultiplicative@n={n}", inv == 0, pairs=pairs, failures=inv)
        r.add(f"exposure_stable@n={n}", exposure == 0, pairs=pairs, failures=exposure)

    for n in range(1, 6):
        touched = [l for l in C.labels(n) if C.cell_module(n, l).involves_kappa_LR()]
        r.add(f"kappa_LR_free_off_label0@n={n}", all(l == 0 for l in touched), labels_with_kappa_LR=touched)

    for n in (1, 2, 3):
        dims = C.cell_dims(n)
        total = sum(d * d for d in dims.values())
        detail = {"cell_dims": {str(k): v for k, v in sorted(dims.items())}, "sum_of_squares": total,
                  "dimension": dimension(n)}
        if n == 2:
            detail["printed_dimension"] = PRINTED_DIM_RANK2
            detail["printed_agrees"] = PRINTED_DIM_RANK2 == total
        r.add(f"sum_of_squares@n={n}", total == dimension(n), **detail)
    return r


def _one_dim_expectations(n: int, ps: ParamSet) -> dict[int, dict[int, object]]:
    out = {-n: {}, n - 1: {0: ps.delta_L}, -n + 1: {n: ps.delta_R}}
    if n >= 3:
        out[n - 2] = {0: ps.delta_L, n: ps.delta_R}
    return out


def criterion_5(seed: int = 0) -> CriterionResult:
    r = CriterionResult("5", "one-dimensional standards and the corner functors")
    ps = params_from("generic6")
    for n in range(2, 6):
        for l, nonzero in _one_dim_expectations(n, ps).items():
            m = C.cell_module(n, l)
            ok = m.dim == 1
            acts = {}
            for k in range(n + 1):
                val = m.action_matrix(k, ps)[0][0] if ok else None
                acts[k] = None if val is None else val.to_str()
                ok = ok and val == nonzero.get(k, ps.zero())
            r.add(f"one_dim@n={n},l={l}", ok, dim=m.dim, action=acts)
    rng = random.Random(seed)
    for n in (2, 3, 4):
        pt = generic_unit_point(rng, DEFAULT_PRIME, n=n, avoid=CONDITIONS)
        checks = C.verify_functors(n, gmp_at(pt, n), seed)
        bad = [c.to_json() for c in checks if not c.passed]
        r.add(f"functors@n={n}", not bad, checks=len(checks), failures=bad[:5], point=pt)
    return r


def criterion_6(seed: int = 0) -> CriterionResult:
    r = CriterionResult("6", "embedding conditions")
    for n in (4, 5):
        rep = embedding_pattern(n, seed)
        r.add(f"hom_pattern@n={n}", rep.matches_computed, matches_stated=rep.matches_stated,
              rows=[{k: row[k] for k in ("id", "hom_dims", "agrees_stated", "agrees_computed")} for row in rep.rows])
    for n in (4, 5, 6):
        det, cmp_ = embedding_condition_det(n)
        r.add(f"constraint_det@n={n}", cmp_["w1-w2+n-2"] != "no", comparisons=cmp_)
    return r


def criterion_7(seed: int = 0, sample: int = 300) -> CriterionResult:
    r = CriterionResult("7", "Temperley-Lieb quotients")
    odd3 = verify_odd_quotient(3, seed=seed)
    r.add("odd@n=3", odd3.passed and odd3.image_dim == 5, report=odd3.to_json())
    odd5 = verify_odd_quotient(5, sample=sample, seed=seed)
    r.add("odd@n=5.sampled", odd5.passed, report=odd5.to_json())
    for n, target in ((2, 5), (4, 42)):
        ev = verify_even_quotient(n)
        r.add(f"even@n={n}", ev.passed and ev.image_dim == target, report=ev.to_json())
    ce, count = genericity_counterexample(3, seed)
    r.add("genericity_counterexample", ce is not None, pair=ce, pairs_checked=count)
    from .quotients import X_FIELD, odd_locus

    x = X_FIELD.gen("x")
    lifted = odd_locus()
    lifted = ParamSet(lifted.delta, x * 0 + 2, lifted.delta_R, lifted.kappa_L, lifted.kappa_R, lifted.kappa_LR,
                      name="odd_quotient/delta_L=2")
    ce, count = strip_counterexample(3, lifted, lifted.delta)
    r.add("constraint_lifted_counterexample", ce is not None, pair=ce, pairs_checked=count)
    kc = kappa_check()
    r.add("kappa_check.recorded", "odd" in kc and "even" in kc, **kc)
    return r


def criterion_8(seed: int = 0, specs: int = 5) -> CriterionResult:
    r = CriterionResult("8", "rescaling preserves Gram ranks")
    rng = random.Random(seed)
    g6 = params_from("generic6")
    for n in (2, 3):
        mods = [C.cell_module(n, l) for l in C.labels(n)]
        points = [random_unit_params(g6, rng) for _ in range(specs)]
        # points on a vanishing condition make the ranks non-trivial
        for cond in CONDITIONS[:3]:
            try:
                points.append(gmp_at(point_on(cond, rng, DEFAULT_PRIME, n=n), n))
            except Exception:  # noqa: BLE001 - a missing special point only weakens coverage; reported below
                continue
        bad = []
        deficient = 0
        for idx, ps in enumerate(points):
            base = [C.gram_rank(m, ps) for m in mods]
            deficient += sum(b < m.dim for b, m in zip(base, mods))
            for way in (1, 2, 3, 4):
                got = [C.gram_rank(m, rescale(ps, way)) for m in mods]
                if got != base:
                    bad.append({"point": idx, "way": way, "ranks": base, "rescaled": got})
        r.add(f"rescaling@n={n}", not bad, points=len(points), rank_deficient_modules=deficient, failures=bad)
    return r


def criterion_minimality(seed: int = 0, ranks=(2, 3, 4, 5)) -> CriterionResult:
    r = CriterionResult("minimality", "every covering edge of the poset is witnessed by a nonzero hom")
    for n in ranks:
        rep = minimality_witnesses(n, seed)
        r.add(f"witnesses@n={n}", rep.passed, edges=len(rep.witnesses) + len(rep.missing),
              missing=[list(x) for x in rep.missing])
    rng = random.Random(seed)
    for n in (2, 3):
        viol = {}
        for trial in range(3):
            pt = point_on(CONDITIONS[trial], rng, DEFAULT_PRIME, n=n)
            ps = gmp_at(pt, n)
            for pos in (coarse_poset(n), chain_poset(n)):
                rep = poset_consistency(n, ps, pos)
                viol.setdefault(pos.name, []).extend(rep.violations)
        r.add(f"consistency@n={n}", not any(viol.values()), violations=viol)
    return r


CRITERIA: dict[str, Callable[..., CriterionResult]] = {
    "1": criterion_1, "2": criterion_2, "3": criterion_3, "4": criterion_4, "5": criterion_5,
    "6": criterion_6, "7": criterion_7, "8": criterion_8, "minimality": criterion_minimality,
}


def run(key: str, seed: int = 0) -> CriterionResult:
    return CRITERIA[key](seed=seed)

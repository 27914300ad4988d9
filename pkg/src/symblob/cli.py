"""Command-line entry point.

Every subcommand writes one report (JSON by default) and exits with 0 when
all its assertions hold, 1 when one fails and 2 on a usage error.  Reports
contain no timings or paths, so a fixed configuration gives byte-identical
JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import cells as C
from . import diagrams as dg
from .errors import ConfigurationError, PoleError, PreconditionError, SymblobError, VerificationError

SCHEMA = "symblob.report.v1"
PARAMS = ("gmp", "generic6", "blob", "dn")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    label: int | None = None
    param: str = "gmp"
    values: dict[str, int] | None = None
    prime: int = 10007
    rescale: int | None = None
    seed: int = 0
    format: str = "json"
    cache_dir: str | None = None
    options: dict = field(default_factory=dict)

    def public(self) -> dict:
        d = asdict(self)
        d.pop("cache_dir")
        d.pop("format")
        return d


@dataclass
class Report:
    payload: dict
    passed: bool = True
    rows: list[dict] | None = None
    text: str | None = None


# ---------------------------------------------------------------------------
# helpers


def _need_n(cfg: RunConfig, lo: int = 1) -> int:
    if cfg.n is None or cfg.n < lo:
        raise PreconditionError(f"--n >= {lo} is required for '{cfg.command}'")
    return cfg.n


def _need_label(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    if cfg.label is None:
        raise PreconditionError(f"--label is required for '{cfg.command}'")
    if cfg.label not in C.labels(n):
        raise PreconditionError(f"label {cfg.label} outside [-{n}, {n - 1}]")
    return cfg.label


def _params(cfg: RunConfig, n: int):
    from .ring import params_from, rescale

    ps = params_from(cfg.param, n)
    if cfg.values is not None:
        ps = ps.specialize(cfg.values, cfg.prime)
    if cfg.rescale is not None:
        ps = rescale(ps, cfg.rescale)
    return ps


def _random_point(cfg: RunConfig, n: int, condition: str | None = None):
    """A prime-field GMP ParamSet, seeded; on ``condition`` when given."""
    from .conditions import generic_unit_point, gmp_at, point_on
    from .embeddings import CONDITIONS
    from .ring import rescale

    rng = random.Random(cfg.seed)
    if cfg.values is not None:
        pt = dict(cfg.values)
    elif condition:
        pt = point_on(condition, rng, cfg.prime, n=n)
    else:
        pt = generic_unit_point(rng, cfg.prime, n=n, avoid=CONDITIONS)
    ps = gmp_at(pt, n, cfg.prime)
    if cfg.rescale is not None:
        ps = rescale(ps, cfg.rescale)
    return pt, ps


def _str(x) -> str:
    return x.to_str() if hasattr(x, "to_str") else str(int(x))


def _matrix(mat) -> list[list[str]]:
    return [[_str(x) for x in row] for row in mat]


# ---------------------------------------------------------------------------
# commands


def cmd_basis(cfg: RunConfig) -> Report:
    n = _need_n(cfg)
    basis = dg.enumerate_basis(n)
    rows = [{"index": i, "diagram": d.to_str(), "propagating": d.propagating_count(),
             "label": C.cell_label(d)} for i, d in enumerate(basis)]
    return Report({"n": n, "dimension": len(basis), "basis": rows}, rows=rows)


def cmd_dim(cfg: RunConfig) -> Report:
    from .presentation import enumerate_reduced

    n = _need_n(cfg)
    d = len(dg.enumerate_basis(n))
    payload = {"n": n, "dimension": d}
    if cfg.options.get("cross_check", True) and n <= 5:
        r = len(enumerate_reduced(n))
        payload["reduced_monomials"] = r
        return Report(payload, passed=r == d, text=str(d))
    return Report(payload, text=str(d))


def _parse_operand(n: int, text: str):
    """A diagram string, or a generator word like ``0,1,2`` / ``e e1 f`` / ``EE1F``."""
    from .presentation import gen_name

    if "|" in text or "(" in text:
        return dg.Diagram.from_str(text), (0,) * 6
    names = {gen_name(n, k).lower(): k for k in range(n + 1)}
    parts = text.replace(",", " ").split()
    if len(parts) == 1 and parts[0].lower() not in names and re.fullmatch(r"(?i)(e\d*|f)+", parts[0]):
        parts = re.findall(r"(?i)e\d*|f", parts[0])
    try:
        word = [int(p) if p.isdigit() else names[p.lower()] for p in parts]
    except KeyError as exc:
        raise PreconditionError(f"unknown generator {exc} (expected one of {sorted(names)})") from None
    if any(k < 0 or k > n for k in word):
        raise PreconditionError("generator index out of range")
    r = dg.multiply_word(n, word)
    return r.diagram, r.weight


def cmd_mult(cfg: RunConfig) -> Report:
    n = _need_n(cfg)
    a, b = cfg.options.get("a"), cfg.options.get("b")
    if a is None or b is None:
        raise PreconditionError("mult needs --a and --b")
    ps = _params(cfg, n)
    d1, w1 = _parse_operand(n, a)
    d2, w2 = _parse_operand(n, b)
    for d in (d1, d2):
        if d.n != n or not dg.is_basis_diagram(d):
            raise PreconditionError(f"{d.to_str()} is not a rank-{n} basis diagram")
    from .algebra import StructureTable

    table = StructureTable(n, cfg.cache_dir)
    wp, k = table.entry(table.index[d1], table.index[d2])
    table.save()
    r = dg.ReductionResult(wp, table.basis[k])
    w = dg.add_weights(w1, w2, r.weight)
    coeff = ps.weight(w)
    return Report({"n": n, "a": d1.to_str(), "b": d2.to_str(), "weight": list(w),
                   "coefficient": _str(coeff), "diagram": r.diagram.to_str()},
                  text=f"{_str(coeff)} * {r.diagram.to_str()}")


def _module(cfg: RunConfig):
    from .gram import module_for

    n = _need_n(cfg)
    return module_for(n, _need_label(cfg))


def cmd_gram(cfg: RunConfig) -> Report:
    m = _module(cfg)
    ps = _params(cfg, m.n)
    G = m.gram_matrix(ps)
    mat = _matrix(G)
    rows = [{"row": i, **{f"c{j}": x for j, x in enumerate(r)}} for i, r in enumerate(mat)]
    return Report({"n": m.n, "label": m.label, "dimension": m.dim, "basis": m.basis_strings(), "gram": mat},
                  rows=rows)


def cmd_gram_det(cfg: RunConfig) -> Report:
    from .gram import formula_variants, gram_report

    n = _need_n(cfg)
    if cfg.label is not None:
        labels = [_need_label(cfg)]
    else:
        # every label with a known closed form at this rank
        labels = [l for l in C.labels(n) if formula_variants(n, l, cfg.param)]
        if not labels:
            raise PreconditionError(f"no closed form at n={n}; pass --label")
    reps = [gram_report(n, l, cfg.param) for l in labels]
    rows = []
    for rep in reps:
        fids = rep.matched or [k for k in rep.comparisons if k.endswith(".stated")] or [""]
        rows.append({"n": n, "label": rep.label, "dim": rep.dimension, "det": rep.determinant.to_str(),
                     "matched-formula": ";".join(rep.matched), "sign": rep.sign(fids[0]) if rep.matched else ""})
    strict = cfg.options.get("strict", False)
    passed = all(rep.matched_stated for rep in reps if rep.comparisons) if strict else \
        all(rep.matched for rep in reps if rep.comparisons)
    return Report({"n": n, "param": cfg.param, "strict": strict, "reports": [r.to_json() for r in reps]},
                  passed=passed, rows=rows)


def cmd_cells(cfg: RunConfig) -> Report:
    from .acceptance import PRINTED_DIM_RANK2

    n = _need_n(cfg)
    classes = C.cell_partition(n)
    dims = C.cell_dims(n)
    rows = [{"label": c.label, "through_count": C.through_count(c.members[0]), "class_size": len(c),
             "cell_dim": dims[c.label], "generator_word": list(C.cell_generator_word(n, c.label)),
             "generator": C.cell_generator(n, c.label).to_str()} for c in sorted(classes, key=lambda c: c.label)]
    total = sum(v * v for v in dims.values())
    dim = len(dg.enumerate_basis(n))
    payload = {"n": n, "classes": rows, "sum_of_squares": total, "dimension": dim}
    ok = total == dim and all(r["class_size"] == r["cell_dim"] ** 2 for r in rows)
    if n == 2:
        payload["printed_dimension"] = PRINTED_DIM_RANK2
        payload["discrepancy"] = PRINTED_DIM_RANK2 != total
    return Report(payload, passed=ok, rows=rows)


def cmd_poset(cfg: RunConfig) -> Report:
    from .poset import chain_poset, coarse_poset, minimality_witnesses, poset_consistency

    n = _need_n(cfg)
    payload = {"n": n, "chain": chain_poset(n).to_json(), "coarse": coarse_poset(n).to_json()}
    passed = True
    if cfg.options.get("check"):
        pt, ps = _random_point(cfg, n, cfg.options.get("condition"))
        payload["point"] = pt
        for pos in (coarse_poset(n), chain_poset(n)):
            rep = poset_consistency(n, ps, pos)
            payload[f"consistency_{pos.name}"] = rep.to_json()
            passed &= rep.passed
    if cfg.options.get("minimality"):
        rep = minimality_witnesses(n, cfg.seed, cfg.prime)
        payload["minimality"] = rep.to_json()
        passed &= rep.passed
    return Report(payload, passed=passed)


def cmd_verify_presentation(cfg: RunConfig) -> Report:
    from .presentation import verify_isomorphism

    n = _need_n(cfg)
    sample = cfg.options.get("sample")
    if sample is None and n > 3:
        sample = 1000
    rep = verify_isomorphism(n, sample=sample, seed=cfg.seed)
    return Report(rep.to_json(), passed=rep.passed,
                  text=f"{rep.reduced_count} = {rep.diagram_count}, {'pass' if rep.passed else 'FAIL'}")


def cmd_verify_functors(cfg: RunConfig) -> Report:
    n = _need_n(cfg, 2)
    pt, ps = _random_point(cfg, n)
    checks = C.verify_functors(n, ps, cfg.seed)
    rows = [c.to_json() for c in checks]
    return Report({"n": n, "point": pt, "checks": rows}, passed=all(c.passed for c in checks), rows=rows)


def cmd_verify_quotient(cfg: RunConfig) -> Report:
    from .quotients import genericity_counterexample, kappa_check, verify_even_quotient, verify_odd_quotient

    n = _need_n(cfg, 2)
    if n % 2:
        rep = verify_odd_quotient(n, sample=cfg.options.get("sample") if n <= 3 else
                                  cfg.options.get("sample") or 300, seed=cfg.seed)
    else:
        rep = verify_even_quotient(n)
    payload = {"quotient": rep.to_json(), "kappa_check": kappa_check()}
    passed = rep.passed
    if cfg.options.get("genericity"):
        ce, count = genericity_counterexample(3, cfg.seed)
        payload["genericity_counterexample"] = {"pair": ce, "pairs_checked": count}
        passed &= ce is not None
    return Report(payload, passed=passed)


def cmd_decomp(cfg: RunConfig) -> Report:
    n = _need_n(cfg)
    cond = cfg.options.get("condition")
    pt, ps = _random_point(cfg, n, cond)
    rows = []
    mods = {l: C.cell_module(n, l) for l in C.labels(n)}
    for l, m in mods.items():
        rows.append({"label": l, "dim": m.dim, "gram_rank": C.gram_rank(m, ps)})
    payload = {"n": n, "point": pt, "condition": cond, "modules": rows}
    if cfg.options.get("homs"):
        nums = {l: C.numeric_module(m, ps) for l, m in mods.items()}
        payload["homs"] = [{"src": b, "dst": a, "dim": d} for b in mods for a in mods if a != b
                           for d in [C.hom_space_dim(mods[b], nums[a], ps)] if d]
    return Report(payload, rows=rows)


def cmd_oracle(cfg: RunConfig) -> Report:
    from . import oracles

    n = _need_n(cfg, 2)
    kind = cfg.options.get("kind", "tl")
    if kind == "tl":
        checks, mat = [oracles.check_tl(n)], oracles.tl_gram(n)
    elif kind in ("blob+", "blob-"):
        checks, mat = [oracles.check_blob(n, kind[-1])], oracles.blob_gram(n, kind[-1])
    elif kind == "symplectic":
        checks, mat = oracles.check_symplectic(n), oracles.symplectic_boundary(n)
    else:
        raise PreconditionError(f"unknown oracle kind {kind!r}")
    return Report({"n": n, "kind": kind, "matrix": _matrix(mat), "checks": [c.to_json() for c in checks]},
                  passed=all(c.passed for c in checks))


def cmd_verify_embeddings(cfg: RunConfig) -> Report:
    from .embeddings import embedding_condition_det, embedding_pattern

    n = _need_n(cfg, 4)
    rep = embedding_pattern(n, cfg.seed, cfg.prime)
    det, cmp_ = embedding_condition_det(n)
    payload = {"pattern": rep.to_json(), "constraint_det": det.to_str(), "constraint_det_matches": cmp_}
    return Report(payload, passed=rep.matches_computed and cmp_["w1-w2+n-2"] != "no")


def cmd_acceptance(cfg: RunConfig) -> Report:
    from .acceptance import CRITERIA

    keys = [cfg.options["criterion"]] if cfg.options.get("criterion") else list(CRITERIA)
    results = [CRITERIA[k](seed=cfg.seed) for k in keys]
    return Report({"criteria": [r.to_json() for r in results]}, passed=all(r.passed for r in results),
                  text="\n".join(r.line() for r in results))


COMMANDS = {
    "basis": cmd_basis, "dim": cmd_dim, "mult": cmd_mult, "gram": cmd_gram, "gram-det": cmd_gram_det,
    "cells": cmd_cells, "poset": cmd_poset, "verify-presentation": cmd_verify_presentation,
    "verify-functors": cmd_verify_functors, "verify-quotient": cmd_verify_quotient, "decomp": cmd_decomp,
    "oracle": cmd_oracle, "verify-embeddings": cmd_verify_embeddings, "acceptance": cmd_acceptance,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns (exit status, rendered report)."""
    if cfg.command not in COMMANDS:
        raise PreconditionError(f"unknown command {cfg.command!r}")
    if cfg.cache_dir:
        Path(cfg.cache_dir).mkdir(parents=True, exist_ok=True)
    try:
        rep = COMMANDS[cfg.command](cfg)
        status = EXIT_OK if rep.passed else EXIT_FAIL
    except VerificationError as exc:
        rep = Report({"error": str(exc), "counterexample": exc.payload}, passed=False)
        status = EXIT_FAIL
    return status, render(cfg, rep)


def render(cfg: RunConfig, rep: Report) -> str:
    if cfg.format == "json":
        doc = {"schema": SCHEMA, "version": __version__, "config": cfg.public(), "passed": rep.passed,
               "report": rep.payload}
        return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"
    if cfg.format == "csv":
        rows = rep.rows if rep.rows is not None else [{"passed": rep.passed}]
        buf = io.StringIO()
        cols = list(rows[0]) if rows else ["passed"]
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        return buf.getvalue()
    if rep.text is not None:
        return rep.text + "\n"
    status = "pass" if rep.passed else "FAIL"
    return json.dumps(rep.payload, sort_keys=True, indent=1, default=str) + f"\n{status}\n"


def _values(text: str) -> dict[str, int]:
    out = {}
    for part in text.split(","):
        if "=" not in part:
            raise argparse.ArgumentTypeError(f"expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = int(v)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank")
    common.add_argument("--label", type=int)
    common.add_argument("--param", choices=PARAMS, default="gmp", help="parametrization (symbolic unless --values)")
    common.add_argument("--values", type=_values, help="specialization, e.g. s=3,a=5,b=7,c=11")
    common.add_argument("--prime", type=int, default=10007)
    common.add_argument("--rescale", type=int, choices=(1, 2, 3, 4))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir")
    p = argparse.ArgumentParser(prog="symblob", description="Exact computations in the symplectic blob algebra.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "mult":
            sp.add_argument("--a", required=True, help="diagram string or generator word")
            sp.add_argument("--b", required=True)
        if name in ("verify-presentation", "verify-quotient"):
            sp.add_argument("--sample", type=int)
        if name == "verify-quotient":
            sp.add_argument("--genericity", action="store_true")
        if name == "gram-det":
            sp.add_argument("--strict", action="store_true", help="require the stated closed form")
        if name in ("decomp", "poset"):
            sp.add_argument("--condition", help="quantum number to vanish, e.g. 'w1-1'")
        if name == "decomp":
            sp.add_argument("--homs", action="store_true")
        if name == "poset":
            sp.add_argument("--check", action="store_true")
            sp.add_argument("--minimality", action="store_true")
        if name == "oracle":
            sp.add_argument("--kind", choices=("tl", "blob+", "blob-", "symplectic"), default="tl")
        if name == "acceptance":
            from .acceptance import CRITERIA

            sp.add_argument("--criterion", choices=list(CRITERIA))
    return p


BASE_KEYS = ("command", "n", "label", "param", "values", "prime", "rescale", "seed", "format", "cache_dir")


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    d = vars(ns).copy()
    base = {k: d.pop(k) for k in BASE_KEYS}
    return RunConfig(**base, options={k: v for k, v in d.items() if v is not None and v is not False})


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = config_from_args(ns)
    try:
        status, out = run(cfg)
    except (PreconditionError, ConfigurationError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PoleError as exc:
        print(f"pole: {exc} (choose another --seed or --values)", file=sys.stderr)
        return EXIT_USAGE
    except SymblobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: check, fan, sample, star, gens, certify, lift, lift-verify, svg.
Exit codes: 0 ok, 2 parse error, 3 unsupported input, 4 budget exceeded,
5 sampling exhausted.  All output is deterministic given inputs and flags.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import fan as fan_mod
from .commuting import (
    certify_not_in_tc3,
    classify_pair,
    labeled_generators,
    symmetric_generators,
)
from .core import (
    MatrixFormatError,
    NegativeCycleError,
    TropMatrix,
    TropScalar,
    format_rational,
    kleene_star,
    load_json,
    matrix_from_json,
    matrix_to_json,
    pair_from_json,
    pair_to_json,
)
from .drawing import render_polytrope_svg
from .polynomials import SparsePoly, matrix_variables, monomial_str, symmetric_variables
from .polytrope import classify_polytrope_pair, is_polytrope
from .series import (
    LiftPreconditionError,
    SeriesMatrix,
    lift_2x2,
    verify_lift,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_BUDGET = 4
EXIT_EXHAUSTED = 5


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _entry(ij: tuple[int, int]) -> str:
    return f"({ij[0]},{ij[1]})"


def _fmt_scalar(s: TropScalar) -> str:
    return "inf" if not s.is_finite else format_rational(s.value)  # type: ignore[arg-type]


def _yesno(flag: bool, witness=None) -> str:
    if flag:
        return "yes"
    return f"no {witness}" if witness else "no"


def cmd_check(args: argparse.Namespace) -> int:
    obj = load_json(args.pair)
    a, b = pair_from_json(obj)
    n = a.n
    if n not in (2, 3, 4):
        return _fail(EXIT_UNSUPPORTED, f"n={n} is not supported (use 2, 3 or 4)")
    lines = [f"n: {n}"]
    if n in (2, 3):
        cls = classify_pair(a, b)
        ts = _yesno(cls.ts, _entry(cls.ts_witness) if cls.ts_witness else None)
        tpre = _yesno(
            cls.tpre.ok,
            ",".join(_entry(e) for e in cls.tpre.failures) if cls.tpre.failures else None,
        )
        if n == 2:
            tc = f"TC2: {cls.tc_status}"
        elif cls.certificate is not None:
            tc = f"TC3: certified-out ({cls.certificate.monomial_name()})"
        else:
            tc = "TC3: unknown"
        lines.append(f"TS: {ts}, Tpre: {tpre}, {tc}")
    both_polytropes = is_polytrope(a) and is_polytrope(b)
    lines.append(f"polytropes: {'yes' if both_polytropes else 'no'}")
    if both_polytropes:
        pc = classify_polytrope_pair(a, b)
        parts = []
        for name, ok in (
            ("commutes", pc.commutes),
            ("star-condition", pc.star_condition),
            ("square-condition", pc.square_condition),
            ("product-condition", pc.product_condition),
        ):
            key = {"commutes": "commutes", "star-condition": "star",
                   "square-condition": "square", "product-condition": "product"}[name]
            wit = pc.witnesses.get(key)
            parts.append(f"{name}: {_yesno(ok, _entry(wit[0]) if wit else None)}")
        lines.append(", ".join(parts))
        for key, label in (("commutes", "commutes"), ("star", "star-condition"),
                           ("square", "square-condition"), ("product", "product-condition")):
            wit = pc.witnesses.get(key)
            if wit:
                at, lhs, rhs = wit
                lines.append(
                    f"witness-values: {label} {_entry(at)} {_fmt_scalar(lhs)} vs {_fmt_scalar(rhs)}"
                )
    print("\n".join(lines))
    return EXIT_OK


def _generators_from_file(path: str) -> tuple[list[SparsePoly], int, tuple[str, ...]]:
    obj = load_json(path)
    if not isinstance(obj, dict) or "generators" not in obj:
        raise MatrixFormatError('expected {"dimension": D, "generators": [...]}')
    dim = obj.get("dimension")
    if not isinstance(dim, int) or dim < 1:
        raise MatrixFormatError("dimension must be a positive integer")
    gens = []
    for gi, terms in enumerate(obj["generators"]):
        parsed = []
        for t in terms:
            e = t.get("exponents")
            c = t.get("coefficient", 1)
            if not isinstance(e, list) or len(e) != dim or not isinstance(c, int):
                raise MatrixFormatError(f"generator {gi}: bad term {t!r}")
            parsed.append((tuple(int(x) for x in e), c))
        gens.append(SparsePoly.from_terms(parsed))
    names = tuple(obj.get("variables", [f"z{i}" for i in range(dim)]))
    if len(names) != dim:
        raise MatrixFormatError("variables length must match dimension")
    return gens, dim, names


def cmd_fan(args: argparse.Namespace) -> int:
    symmetric = False
    if args.config.endswith(".json"):
        gens, dim, names = _generators_from_file(args.config)
        label = args.config
    else:
        cfg = fan_mod.named_config(args.config)
        gens, dim, names, symmetric = list(cfg.gens), cfg.dim, cfg.names, cfg.symmetric
        label = cfg.name
    budget = args.budget if args.budget is not None else fan_mod.default_budget()
    _, lin = fan_mod.lineality_space(gens, dim)
    try:
        cells = fan_mod.enumerate_cells(gens, dim, budget=budget, jobs=args.jobs)
    except fan_mod.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if label == "commuting:n=3":
            print(
                "reference: full 3x3 prevariety f-vector "
                f"{list(fan_mod.KNOWN_FVECTOR_PREVARIETY_3_FULL)} and variety f-vector "
                f"{list(fan_mod.KNOWN_FVECTOR_VARIETY_3)} (external Groebner-fan computations)",
                file=sys.stderr,
            )
        print("rerun with --budget to override", file=sys.stderr)
        return EXIT_BUDGET
    fv = fan_mod.f_vector(cells, lin)
    report: dict = {
        "configuration": label,
        "ambient_dimension": dim,
        "generator_count": len(gens),
        "lineality_dim": lin,
        "f_vector": list(fv.counts),
        "cell_count": len(cells),
        "max_dim": max((c.dim for c in cells), default=lin),
    }
    if args.emit_cells:
        report["cells"] = [
            {
                "pattern": [list(s) for s in c.pattern],
                "dim": c.dim,
                "witness": [str(x) for x in c.witness],
            }
            for c in cells
        ]
    if args.orbits:
        if not symmetric:
            return _fail(EXIT_UNSUPPORTED, "--orbits needs the symmetric:n=3 configuration")
        orbits = fan_mod.maximal_cell_orbits(cells, gens, names, symmetric=True)
        roman = {1: "I", 2: "II", 3: "III", 4: "IV", 5: "V"}
        report["orbits"] = [
            {
                "label": roman.get(i + 1, str(i + 1)),
                "size": o.size,
                "cells": [[list(s) for s in p] for p in o.cells],
                "tie_pairs": [[list(pair) for pair in cell] for cell in o.tie_pairs],
            }
            for i, o in enumerate(orbits)
        ]
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _random_matrix(rng: random.Random, n: int, hi: int) -> TropMatrix:
    return TropMatrix.of(
        [[rng.randint(0, hi) for _ in range(n)] for _ in range(n)]
    )


def cmd_sample(args: argparse.Namespace) -> int:
    if args.n != 3:
        return _fail(EXIT_UNSUPPORTED, "sampling is implemented for n=3")
    rng = random.Random(args.seed)
    for draw in range(1, args.max_draws + 1):
        a = _random_matrix(rng, 3, args.range)
        b = _random_matrix(rng, 3, args.range)
        cls = classify_pair(a, b, deep=args.deep)
        if args.region == "ts-minus-tpre":
            hit = cls.ts and not cls.tpre.ok
        elif args.region == "tpre-minus-ts":
            hit = cls.tpre.ok and not cls.ts
        elif args.region == "certified-out":
            hit = cls.ts and cls.tpre.ok and cls.tc_status == "certified-out"
        else:
            return _fail(
                EXIT_UNSUPPORTED,
                "region must be one of ts-minus-tpre, tpre-minus-ts, certified-out",
            )
        if hit:
            print(f"found after {draw} draws (seed {args.seed})")
            print(json.dumps(pair_to_json(a, b), sort_keys=True))
            tc = cls.tc_status
            if cls.certificate is not None:
                tc = f"certified-out ({cls.certificate.monomial_name()})"
            print(f"TS: {'yes' if cls.ts else 'no'}, Tpre: {'yes' if cls.tpre.ok else 'no'}, TC3: {tc}")
            return EXIT_OK
    print(f"error: no {args.region} pair in {args.max_draws} draws (seed {args.seed})", file=sys.stderr)
    return EXIT_EXHAUSTED


def cmd_star(args: argparse.Namespace) -> int:
    a = matrix_from_json(load_json(args.matrix))
    try:
        s = kleene_star(a)
    except NegativeCycleError as exc:
        return _fail(1, str(exc))
    print(json.dumps(matrix_to_json(s), sort_keys=True))
    return EXIT_OK


def cmd_gens(args: argparse.Namespace) -> int:
    if args.symmetric:
        names = symmetric_variables()
        labels = ((1, 2), (1, 3), (2, 3))
        gens = symmetric_generators()
    else:
        names = matrix_variables(args.n)
        pairs = labeled_generators(args.n)
        labels = tuple(lab for lab, _ in pairs)
        gens = [g for _, g in pairs]
    for (k, l), g in zip(labels, gens):
        print(f"g{k}{l} = {g.render(names)}")
    return EXIT_OK


def cmd_certify(args: argparse.Namespace) -> int:
    a, b = pair_from_json(load_json(args.pair))
    if a.n != 3:
        return _fail(EXIT_UNSUPPORTED, "certificates are implemented for n=3")
    cert = certify_not_in_tc3(a, b, deep=not args.shallow)
    if cert is None:
        print(json.dumps({"status": "unknown"}))
        return EXIT_OK
    names = matrix_variables(3)
    out = {
        "status": "certified-out",
        "source": cert.source,
        "polynomial": [
            {"monomial": monomial_str(m, names), "coefficient": c}
            for m, c in cert.polynomial.terms
        ],
        "min_monomial": cert.monomial_name(),
        "min_value": str(cert.min_value),
        "runner_up_value": str(cert.runner_up_value),
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_lift(args: argparse.Namespace) -> int:
    a, b = pair_from_json(load_json(args.pair))
    if a.n != 2:
        return _fail(EXIT_UNSUPPORTED, "lifting is implemented for n=2")
    try:
        found = lift_2x2(a, b)
    except LiftPreconditionError as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    if found is None:
        print(json.dumps({"status": "not-found"}))
        return EXIT_OK
    x, y = found
    out = {
        "status": "found",
        "n": 2,
        "X": x.to_grid(),
        "Y": y.to_grid(),
        "A": matrix_to_json(a)["entries"],
        "B": matrix_to_json(b)["entries"],
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_lift_verify(args: argparse.Namespace) -> int:
    obj = load_json(args.lift)
    if not isinstance(obj, dict) or not {"n", "X", "Y", "A", "B"} <= set(obj):
        return _fail(EXIT_PARSE, 'expected {"n", "X", "Y", "A", "B"}')
    try:
        x = SeriesMatrix.parse(obj["X"])
        y = SeriesMatrix.parse(obj["Y"])
        a, b = pair_from_json({"n": obj["n"], "A": obj["A"], "B": obj["B"]})
    except (ValueError, MatrixFormatError) as exc:
        return _fail(EXIT_PARSE, str(exc))
    check = verify_lift(x, y, a, b)
    if check.ok:
        print("VERIFIED")
        return EXIT_OK
    print("NOT VERIFIED")
    for kind, at in check.failures:
        print(f"  {kind} fails at {_entry(at)}")
    return 1


def cmd_svg(args: argparse.Namespace) -> int:
    mats = [matrix_from_json(load_json(p)) for p in args.matrices]
    try:
        doc = render_polytrope_svg(mats, args.output)
    except ValueError as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))
    print(
        f"wrote {args.output}: {doc.point_count} points, "
        f"regions {list(doc.region_vertex_counts)}"
        + (f", intersection vertices {len(doc.intersection_vertices)}" if doc.intersection_vertices else "")
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tropcomm", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a matrix pair")
    c.add_argument("pair", help="pair JSON file")
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("fan", help="tropical prevariety complex of a generator set")
    f.add_argument("config", help='"commuting:n=K", "symmetric:n=3", or a generators .json file')
    f.add_argument("--budget", type=int, default=None, help="candidate-pattern budget")
    f.add_argument("--jobs", type=int, default=1, help="worker processes")
    f.add_argument("--emit-cells", action="store_true")
    f.add_argument("--orbits", action="store_true", help="orbit table of maximal cells")
    f.add_argument("-o", "--output", default=None)
    f.set_defaults(func=cmd_fan)

    s = sub.add_parser("sample", help="random search for a region representative")
    s.add_argument("--region", required=True)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-draws", type=int, default=100000)
    s.add_argument("--range", type=int, default=4, help="entries drawn uniformly from 0..range")
    s.add_argument("--deep", action="store_true", help="run the slice certificate search too")
    s.set_defaults(func=cmd_sample)

    st = sub.add_parser("star", help="Kleene star of a matrix")
    st.add_argument("matrix")
    st.set_defaults(func=cmd_star)

    g = sub.add_parser("gens", help="commuting-ideal generators")
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--symmetric", action="store_true")
    g.set_defaults(func=cmd_gens)

    ce = sub.add_parser("certify", help="non-membership certificate for the 3x3 variety")
    ce.add_argument("pair")
    ce.add_argument("--shallow", action="store_true", help="witness families only")
    ce.set_defaults(func=cmd_certify)

    l = sub.add_parser("lift", help="commuting series lift of a 2x2 pair")
    l.add_argument("pair")
    l.set_defaults(func=cmd_lift)

    lv = sub.add_parser("lift-verify", help="verify a series lift file")
    lv.add_argument("lift")
    lv.set_defaults(func=cmd_lift_verify)

    sv = sub.add_parser("svg", help="render 3x3 polytropes to SVG")
    sv.add_argument("matrices", nargs="+")
    sv.add_argument("-o", "--output", required=True)
    sv.set_defaults(func=cmd_svg)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MatrixFormatError as exc:
        return _fail(EXIT_PARSE, str(exc))
    except fan_mod.BudgetExceededError as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except ValueError as exc:
        return _fail(EXIT_UNSUPPORTED, str(exc))


if __name__ == "__main__":
    sys.exit(main())

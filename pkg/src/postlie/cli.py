"""Command-line front end.

Algebras are given as ``catalog:NAME`` (``catalog:r3_diag(1)`` or
``catalog:r3_diag --param 1``) or as a path to a JSON file in the
LieAlgebra format. Products are JSON files or ``ref:NAME`` for the shipped
reference structures.

Exit codes: 0 success or witness, 1 a check failed, 2 input error,
3 certified empty, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import reference as ref
from . import solver as sv
from . import suite
from .derivcoh import derivations, inner_and_outer
from .exact import Matrix, fmt
from .liealg import (CATALOG_NAMES, AlgebraError, LieAlgebra, PairOnSameSpace, catalog, heisenberg,
                     killing_radical, predicates, r2, r3_jordan, series)
from .poly import Budget, default_budget
from .structures import (BilinearProduct, ProductError, all_left_nilpotent, verify_commutative,
                         verify_pair)

COMMANDS = ("analyze", "verify-product", "solve", "classify", "derivations", "paper-suite", "catalog")
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EMPTY, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# loading


class _Params:
    """Hands out --param values to parametrized catalog entries in order."""

    def __init__(self, values):
        self.values = list(values or [])

    def take(self):
        return self.values.pop(0) if self.values else None


def load_algebra(source: str, params: _Params) -> LieAlgebra:
    if source.startswith("catalog:"):
        name = source[len("catalog:"):]
        needs = name.split("(")[0] in ("abelian", "r3_diag", "sl2_ltimes_V") and "(" not in name
        try:
            return catalog(name, params.take() if needs else None)
        except (AlgebraError, ValueError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from exc
    path = Path(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return LieAlgebra.from_json(data, name=path.stem)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc.msg}") from exc
    except AlgebraError as exc:
        raise InputError(f"{source}: {exc}") from exc


def _reference_products() -> dict:
    out = {}
    out.update(ref.structures_r2())
    out.update(ref.structures_r3_jordan())
    out.update(ref.structures_heisenberg())
    out["h1_plus_C"] = ref.h1_plus_C_product()
    out["sl3_example"] = ref.sl3_example_product()
    return out


def load_product(source: str, params: _Params) -> BilinearProduct:
    if source.startswith("ref:"):
        name = source[4:]
        if name == "C2":
            value = params.take()
            if value is None:
                raise InputError("ref:C2 needs --param")
            return ref.C2(value)
        table = _reference_products()
        if name not in table:
            raise InputError(f"unknown reference product {name!r}; known: C2, {', '.join(sorted(table))}")
        return table[name]
    try:
        return BilinearProduct.from_json(json.loads(Path(source).read_text(encoding="utf-8")))
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc.msg}") from exc
    except ProductError as exc:
        raise InputError(f"{source}: {exc}") from exc


# ---------------------------------------------------------------------------
# reports


def _digest(args: argparse.Namespace, loaded: list) -> str:
    h = hashlib.sha256()
    for item in loaded:
        h.update(json.dumps(item.to_json(), sort_keys=True).encode())
    return h.hexdigest()[:16]


def _matrix_lines(m, indent="    ") -> list[str]:
    rows = m.to_str_rows() if isinstance(m, Matrix) else m
    width = max((len(x) for r in rows for x in r), default=1)
    return [indent + "[ " + "  ".join(x.rjust(width) for x in r) + " ]" for r in rows]


def _product_lines(p: BilinearProduct) -> list[str]:
    out = []
    for i, m in enumerate(p.left_ops()):
        out.append(f"  L(e{i + 1}) =")
        out += _matrix_lines(m)
    return out


def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_matrix(v) and not _flat_list(v):
                out.append(f"{pad}{k}:")
                out += _text(v, indent + 1)
            elif _is_matrix(v):
                out.append(f"{pad}{k}:")
                out += _matrix_lines(v, pad + "  ")
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)) and not _is_matrix(v):
                sub = _text(v, indent + 1)
                out.append(f"{pad}- " + (sub[0].strip() if sub else ""))
                out += sub[1:]
            elif _is_matrix(v):
                out += _matrix_lines(v, pad + "  ") + [""]
            else:
                out.append(f"{pad}- {_scalar(v)}")
        return out
    return [pad + _scalar(value)]


def _is_matrix(v) -> bool:
    return (isinstance(v, list) and bool(v) and all(isinstance(r, list) and r for r in v)
            and all(isinstance(x, str) for r in v for x in r))


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[]" if not v else ", ".join(_scalar(x) for x in v)
    if isinstance(v, dict):
        return "{}"
    return str(v)


def emit(args, command: str, result: dict, loaded: list, budget: Budget = None, elapsed=None,
         extra_text: list = ()):
    report = {"command": command, "inputs_digest": _digest(args, loaded), "result": result}
    if budget is not None:
        report["budget"] = {"limit": budget.limit, "used": budget.used}
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    print(f"== {command}")
    for line in _text(result):
        print(line)
    for line in extra_text:
        print(line)
    if budget is not None:
        print(f"budget: {budget.used} of {budget.limit} steps")
    if elapsed is not None:
        print(f"time: {elapsed:.2f}s")


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    params = _Params(args.param)
    g = load_algebra(args.algebra, params)
    io = inner_and_outer(g)
    result = {
        "algebra": g.name or args.algebra,
        "dim": g.dim,
        "predicates": predicates(g),
        "lower_central_series": [s.dim for s in series(g, "lower_central")],
        "derived_series": [s.dim for s in series(g, "derived")],
        "radical_dim": killing_radical(g).dim,
        "dim_der": io["dim_der"],
        "dim_inner": io["dim_inner"],
        "dim_H1": io["dim_H1"],
    }
    if args.show_basis:
        result["derivation_basis"] = [m.to_str_rows() for m in derivations(g).basis]
    emit(args, "analyze", result, [g])
    return EXIT_OK


def cmd_derivations(args) -> int:
    g = load_algebra(args.algebra, _Params(args.param))
    der = derivations(g)
    io = inner_and_outer(g)
    result = {"algebra": g.name or args.algebra, "dim_der": der.dim, "dim_inner": io["dim_inner"],
              "dim_H1": io["dim_H1"], "basis": [m.to_str_rows() for m in der.basis]}
    emit(args, "derivations", result, [g])
    return EXIT_OK


def cmd_verify_product(args) -> int:
    params = _Params(args.param)
    algebras = [load_algebra(a, params) for a in args.algebras]
    p = load_product(args.product, params)
    mode = args.mode or ("pair" if len(algebras) == 2 else "commutative")
    if mode == "commutative" and len(algebras) != 1:
        raise InputError("commutative mode takes exactly one algebra")
    if mode == "pair" and len(algebras) != 2:
        raise InputError("pair mode takes two algebras: g then n")
    if any(a.dim != p.dim for a in algebras):
        raise InputError(f"dimension mismatch: product has dim {p.dim}, algebras "
                         + ", ".join(str(a.dim) for a in algebras))
    if mode == "pair":
        report = verify_pair(PairOnSameSpace(*algebras), p)
    else:
        report = verify_commutative(algebras[0], p)
    result = {"mode": mode, **report.to_json()}
    notes = []
    if report.passed:
        flag, witness = all_left_nilpotent(p)
        result["all_left_nilpotent"] = flag
        if not flag:
            result["non_nilpotent_witness"] = [fmt(x) for x in witness]
            notes.append("warning: some left multiplication L(x) is not nilpotent")
    if args.format == "text":
        notes = ["product:"] + _product_lines(p) + notes
    emit(args, "verify-product", result, algebras + [p], extra_text=notes)
    return EXIT_OK if report.passed else EXIT_FAIL


_STATUS_EXIT = {"witness": EXIT_OK, "families": EXIT_OK, "empty": EXIT_EMPTY,
                "inconclusive": EXIT_INCONCLUSIVE}


def cmd_solve(args) -> int:
    params = _Params(args.param)
    algebras = [load_algebra(a, params) for a in args.algebras]
    budget = Budget(args.budget)
    start = time.perf_counter()
    if args.pair:
        if len(algebras) != 2:
            raise InputError("--pair takes two algebras: g then n")
        g, n = algebras
        if g.dim != n.dim:
            raise InputError("g and n must have the same dimension")
        result = sv.solve_pair(PairOnSameSpace(g, n), budget, args.split_depth, args.mode or "witness",
                               args.order)
    else:
        if len(algebras) != 1:
            raise InputError("--commutative takes one algebra")
        result = sv.solve(sv.setup_commutative(algebras[0]), budget, args.split_depth,
                          args.mode or "families", args.order)
    data = result.to_json()
    data.pop("steps", None)
    extra = []
    if args.format == "text" and result.witness is not None:
        extra = ["witness product:"] + _product_lines(result.witness)
    emit(args, "solve", data, algebras, budget, time.perf_counter() - start, extra)
    return _STATUS_EXIT[result.status]


def _classification_data(g: LieAlgebra):
    if g == r2():
        return ref.aut_r2(), [sv.Candidate(k, v) for k, v in ref.structures_r2().items()], None
    if g == r3_jordan():
        return (ref.aut_r3_jordan(), [sv.Candidate(k, v) for k, v in ref.structures_r3_jordan().items()],
                ref.r3_jordan_family())
    if g == heisenberg():
        s = ref.structures_heisenberg()
        cands = [sv.Candidate("C1", s["C1"]), sv.Candidate("C2", ref.C2_symbolic("mu"), ("mu",)),
                 sv.Candidate("C3", s["C3"]), sv.Candidate("C4", s["C4"])]
        return ref.aut_heisenberg(), cands, ref.heisenberg_family()
    raise InputError("classification is available for r2, r3_jordan and heisenberg "
                     "(the algebras with a shipped automorphism parametrization)")


def cmd_classify(args) -> int:
    g = load_algebra(args.algebra, _Params(args.param))
    aut, cands, family = _classification_data(g)
    if args.no_candidates:
        cands = []
    budget = Budget(args.budget)
    start = time.perf_counter()
    res = sv.classify_commutative(g, aut, cands, budget, args.split_depth, family)
    emit(args, "classify", res.to_json(), [g], budget, time.perf_counter() - start)
    if res.status == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if res.status == "complete" else EXIT_FAIL


def cmd_paper_suite(args) -> int:
    if args.list:
        rows = suite.listing()
        if args.format == "json":
            print(json.dumps({"criteria": rows}, indent=2, sort_keys=True))
        else:
            for r in rows:
                tag = " (contingent)" if r["contingent"] else ""
                limit = "no time limit" if r["limit_seconds"] is None else f"limit {r['limit_seconds']} s"
                print(f"{r['id']:>2}. {r['title']}{tag}  [{limit}]")
        return EXIT_OK
    report, timings = suite.run_suite(args.budget, args.only or None)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for e in report["criteria"]:
            print(f"[{e['status'].upper():>10}] {e['id']:>2}. {e['title']}  ({timings[e['id']]:.2f}s)")
            if e["status"] not in ("pass",):
                for line in _text(e["detail"], 2):
                    print(line)
        s = report["summary"]
        print(f"pass {s['pass']}, fail {s['fail']}, budget {s['budget']}, contingent {s['contingent']}")
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_catalog(args) -> int:
    if not args.name:
        if args.format == "json":
            print(json.dumps({"algebras": list(CATALOG_NAMES)}, indent=2))
        else:
            for n in CATALOG_NAMES:
                print(n)
        return EXIT_OK
    g = load_algebra("catalog:" + args.name, _Params(args.param))
    print(g.dumps())
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _depth(text: str) -> int:
    d = int(text)
    if not 0 <= d <= 12:
        raise argparse.ArgumentTypeError("split depth must be between 0 and 12")
    return d


def _budget(text: str) -> int:
    b = int(text)
    if b <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return b


def _common(p: argparse.ArgumentParser):
    p.add_argument("--order", choices=("lex", "grevlex"), default="lex", help="term order")
    p.add_argument("--split-depth", type=_depth, default=6, help="case-split depth (0..12)")
    p.add_argument("--budget", type=_budget, default=None,
                   help="step budget (default 200000, or POSTLIE_BUDGET)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--show-basis", action="store_true", help="print basis matrices")
    p.add_argument("--param", action="append", default=[],
                   help="rational parameter for a parametrized catalog entry (repeatable)")


def build_parser(command: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"postlie {command}")
    _common(p)
    if command in ("analyze", "derivations", "classify"):
        p.add_argument("algebra")
    if command == "classify":
        p.add_argument("--no-candidates", action="store_true",
                       help="do not seed the classification with the shipped representatives")
    if command == "verify-product":
        p.add_argument("algebras", nargs="+", help="g (commutative) or g n (pair)")
        p.add_argument("--product", required=True, help="JSON file or ref:NAME")
        p.add_argument("--mode", choices=("pair", "commutative"))
    if command == "solve":
        kind = p.add_mutually_exclusive_group(required=True)
        kind.add_argument("--pair", action="store_true", help="structures on (g, n)")
        kind.add_argument("--commutative", action="store_true", help="commutative structures on g")
        p.add_argument("algebras", nargs="+")
        p.add_argument("--mode", choices=("witness", "families"))
    if command == "paper-suite":
        p.add_argument("--list", action="store_true", help="list the criteria without running them")
        p.add_argument("--only", type=int, action="append", help="run only this criterion (repeatable)")
    if command == "catalog":
        p.add_argument("name", nargs="?", help="export this algebra as JSON")
    return p


HANDLERS = {
    "analyze": cmd_analyze, "verify-product": cmd_verify_product, "solve": cmd_solve,
    "classify": cmd_classify, "derivations": cmd_derivations, "paper-suite": cmd_paper_suite,
    "catalog": cmd_catalog,
}


def _usage() -> str:
    return "usage: postlie {" + ",".join(COMMANDS) + "} [options]\n" \
           "run 'postlie COMMAND --help' for the options of a command"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(_usage())
        return EXIT_OK if argv else EXIT_INPUT
    command = argv[0]
    if command not in HANDLERS:
        print(f"postlie: unknown command {command!r}\n" + _usage(), file=sys.stderr)
        return EXIT_INPUT
    parser = build_parser(command)
    try:
        args = parser.parse_intermixed_args(argv[1:])
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if args.budget is None:
            args.budget = default_budget()
    except ValueError as exc:
        print(f"postlie: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return HANDLERS[command](args)
    except (InputError, AlgebraError, ProductError) as exc:
        print(f"postlie: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

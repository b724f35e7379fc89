"""Command line entry point: ``stabext validate|ext|extdeg|ar|verify``.

Every command prints one JSON document on standard output.  Exit status is
0 on success, 1 when a check fails and 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import AlgebraPresentation, SearchBudgetExceeded, find_symmetrizing_form, validate_algebra
from .modcat import FDModule, is_projective
from .workbench import DEFAULTS, SUITES, CorpusEntry, Workbench, load_corpus, run_suite


class InputError(Exception):
    """Bad input; the message names the file and, where known, the field."""


def _read_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_algebra_file(path: Path) -> AlgebraPresentation:
    try:
        return AlgebraPresentation.from_json(_read_json(path))
    except InputError:
        raise
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{path}: {exc}") from None


def resolve_entry(spec: str, corpus_dir=None) -> CorpusEntry:
    """An entry directory, an algebra.json file, or the name of a corpus entry."""
    p = Path(spec)
    if p.is_dir():
        if not (p / "algebra.json").exists():
            raise InputError(f"{p}: no algebra.json in directory")
        _load_algebra_file(p / "algebra.json")  # field-level diagnostics first
        try:
            return CorpusEntry.load(p)
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise InputError(f"{p}: {exc}") from None
    if p.is_file():
        return CorpusEntry(p.stem, _load_algebra_file(p), {}, {})
    try:
        corpus = load_corpus(corpus_dir)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    if spec not in corpus:
        raise InputError(f"{spec}: neither a file nor a corpus entry (known: {', '.join(corpus)})")
    return corpus[spec]


def resolve_module(entry: CorpusEntry, spec: str) -> FDModule:
    if spec in entry.modules:
        return entry.modules[spec]
    p = Path(spec)
    if not p.is_file():
        raise InputError(f"{spec}: neither a module of entry '{entry.name}' nor a file")
    try:
        return FDModule.from_json(_read_json(p), entry.algebra)
    except InputError:
        raise
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"{p}: {exc}") from None


def _range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got '{text}'") from None
    if hi < lo:
        raise argparse.ArgumentTypeError("empty degree range")
    return range(lo, hi + 1)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> tuple:
    entry = resolve_entry(args.path, args.corpus)
    rep = validate_algebra(entry.algebra)
    out = rep.to_json()
    try:
        lam = find_symmetrizing_form(entry.algebra, seed=args.seed)
        out["symmetric"] = lam is not None
        if lam is not None:
            out["form"] = [entry.algebra.field.encode(x) for x in lam.functional]
    except SearchBudgetExceeded as exc:
        out["symmetric"] = None
        out["symmetric_detail"] = str(exc)
    out["modules"] = {name: {"dim": M.dim, "projective": is_projective(M)} for name, M in entry.modules.items()}
    ok = rep.ok and out["symmetric"] is not False
    return out, 0 if ok else 1


def cmd_ext(args) -> tuple:
    entry = resolve_entry(args.algebra, args.corpus)
    M, N = resolve_module(entry, args.M), resolve_module(entry, args.N)
    from .resolve import ext_table

    table = ext_table(M, N, args.range)
    return {"algebra": entry.algebra.name, "M": M.name, "N": N.name, "ext": table.to_json()}, 0


def cmd_extdeg(args) -> tuple:
    from .extdeg import ext_deg

    entry = resolve_entry(args.algebra, args.corpus)
    M = resolve_module(entry, args.M)
    r = ext_deg(M, args.window, args.guard, args.seed)
    return {"algebra": entry.algebra.name, "module": M.name, **r.to_json()}, 0


def cmd_ar(args) -> tuple:
    from .arquiver import NotApplicable, build_component, certify_quasi_length, verify_ar_sequence

    entry = resolve_entry(args.algebra, args.corpus)
    M = resolve_module(entry, args.M)
    wb = Workbench({entry.name: entry}, args.window, args.guard, args.radius, args.seed, args.budget,
                   args.accept_probable)
    try:
        seq = wb.ar(M)
    except NotApplicable as exc:
        raise InputError(f"{args.M}: {exc}") from None
    check = verify_ar_sequence(seq)
    out = {
        "algebra": entry.algebra.name,
        "module": M.name,
        "sequence": {
            "left_dim": seq.left.dim,
            "middle": [{"dim": s.module.dim, "projective": s.projective, "certified": s.certified}
                       for s in seq.summands],
            "alpha": seq.alpha,
            "verification": check,
        },
        "component": None,
        "limitation": "component shape is observed on a finite fragment; global shape is not certified",
    }
    if args.radius > 0:
        G = build_component(M, args.radius, args.seed, args.budget)
        if args.certify_ql:
            for v in sorted(G.vertices):
                certify_quasi_length(G, v)
        out["component"] = G.to_json()
        if args.edges:
            Path(args.edges).write_text(G.edge_list())
    return out, 0 if check["ok"] else 1


def cmd_verify(args) -> tuple:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise InputError(f"unknown suite '{n}' (choose from all, {', '.join(SUITES)})")
    try:
        corpus = load_corpus(args.corpus)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    wb = Workbench(corpus, args.window, args.guard, args.radius, args.seed, args.budget, args.accept_probable)
    reports = [run_suite(n, wb) for n in names]
    out = {
        "params": wb.params,
        "status": "fail" if any(r.failures for r in reports) else "pass",
        "reports": [r.to_json(include_timings=args.timings) for r in reports],
    }
    return out, 1 if out["status"] == "fail" else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", type=int, default=DEFAULTS["window"], help="largest degree inspected (default 20)")
    common.add_argument("--guard", type=int, default=DEFAULTS["guard"], help="trailing zeros required for Finite (default 8)")
    common.add_argument("--radius", type=int, default=DEFAULTS["radius"], help="component radius (default 4)")
    common.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    common.add_argument("--budget", type=int, default=DEFAULTS["budget"], help="decomposition trial budget")
    common.add_argument("--accept-probable", action="store_true",
                        help="let probable (uncertified) indecomposables become vertices")
    common.add_argument("--json-out", metavar="PATH", help="also write the JSON result to PATH")
    common.add_argument("--corpus", metavar="DIR", help="corpus directory (default: $STABEXT_CORPUS or built-in)")

    ap = argparse.ArgumentParser(prog="stabext", description="Stable cohomology and extension degrees "
                                 "for finite-dimensional symmetric algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate an algebra (and its modules)")
    p.add_argument("path", help="entry directory, algebra.json, or corpus entry name")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ext", parents=[common], help="dimensions of stable Ext over a degree range")
    p.add_argument("algebra")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--range", type=_range, default=range(-3, 6), metavar="LO:HI", help="degrees, e.g. --range=-3:5 (the default)")
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("extdeg", parents=[common], help="extension degree verdict")
    p.add_argument("algebra")
    p.add_argument("M")
    p.set_defaults(func=cmd_extdeg)

    p = sub.add_parser("ar", parents=[common], help="almost split sequence and component fragment")
    p.add_argument("algebra")
    p.add_argument("M")
    p.add_argument("--certify-ql", action="store_true", help="expand the frontier to certify quasi-lengths")
    p.add_argument("--edges", metavar="PATH", help="write the component edge list to PATH")
    p.set_defaults(func=cmd_ar)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (not deterministic)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out, code = args.func(args)
    except InputError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stdout)
        print(f"stabext: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(out, indent=1, sort_keys=True, default=str)
    print(text)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``hamnt family|invariants|certify|verify|subgroups``.

Exit status: 0 = pass, 1 = verified failure (a code that is not neighbour
transitive, a suite with failing instances), 2 = usage, parse or capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import suites
from .codes import (
    Code,
    cell_profiles,
    certificate_report,
    format_code,
    is_connected,
    is_diagonally_nt,
    is_nt,
    read_code,
    setwise_stabilizer,
)
from .families import all_fpa, classify, inj, perm_code, rep, rep_p_blowup, w_half
from .hamming import full_wreath_elements
from .limits import CapacityError, ParseError
from .perm import all_subgroups, generate, is_2_transitive, normalizer_in_sym, parse_generators

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    name = args.name
    if name == "rep":
        C = rep(args.m, args.q)
    elif name == "inj":
        C = inj(args.m, args.q)
    elif name == "whalf":
        C = w_half(args.m)
    elif name == "all":
        C = all_fpa(args.p, args.q)
    elif name == "perm":
        if args.group is None:
            raise ValueError("perm needs --group")
        C = perm_code(generate(args.q, parse_generators(args.group, args.q)))
    else:  # blowup
        if args.input is None:
            raise ValueError("blowup needs --input")
        C = rep_p_blowup(read_code(args.input), args.p)
    _emit(format_code(C), args.output)
    return EXIT_OK


def invariants_report(C: Code) -> dict:
    part = C.partition
    return {
        "m": C.m,
        "q": C.q,
        "size": len(C),
        "delta": C.delta if len(C) > 1 else None,
        "rho": part.rho,
        "cell_sizes": part.cell_sizes(),
        "num_profiles": [[[list(pair) for pair in p] for p in cell] for cell in cell_profiles(C)],
        "connected": is_connected(C.words),
    }


def cmd_invariants(args) -> int:
    report = invariants_report(read_code(args.file))
    if args.json:
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return EXIT_OK


def certify(C: Code, ambient: str = "diag") -> dict:
    if ambient == "full":
        G = setwise_stabilizer(C, full_wreath_elements(C.m, C.q))
        cert = is_nt(C, G, check=False)
    else:
        cert = is_diagonally_nt(C)
    report = certificate_report(C, cert)
    report["ambient"] = ambient
    if ambient == "diag":
        report["classification"] = str(classify(C, nt=cert.verdict))
    return report


def cmd_certify(args) -> int:
    report = certify(read_code(args.file), args.ambient)
    if args.json:
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return EXIT_OK if report["verdict"] else EXIT_FAIL


def _suite_kwargs(args) -> dict:
    name = args.suite
    kw: dict = {"full": args.full, "workers": args.workers}
    if name == "thm-main2" and (args.m or args.q):
        ms = args.m or [m for m, _ in suites.CLASSIFY_GRID]
        qs = args.q or [q for _, q in suites.CLASSIFY_GRID]
        kw["grid"] = [(m, q) for m in ms for q in qs]
    elif name in ("lemma-1reg", "thm-permiff", "lemma-rep") and args.q:
        kw["qs"] = args.q
    if name == "lemma-rep" and args.p:
        kw["p"] = args.p[0]
    if name == "lemma-connected":
        kw["samples"] = args.samples
        kw["seed"] = args.seed
    return kw


def cmd_verify(args) -> int:
    if args.suite not in suites.SUITES:
        raise ValueError(f"unknown suite {args.suite!r}; choose from {', '.join(suites.SUITES)}")
    report = suites.SUITES[args.suite](**_suite_kwargs(args))
    if args.counterexamples:
        outdir = Path(args.counterexamples)
        outdir.mkdir(parents=True, exist_ok=True)
        for k, inst in enumerate(report.failures()):
            if inst.counterexample:
                (outdir / f"{report.name}-{k}.code").write_text(inst.counterexample["code"])
    if args.json:
        print(json.dumps(report.to_json()))
    else:
        for inst in report.instances:
            mark = "PASS" if inst.passed else "FAIL"
            print(f"[{mark}] {report.name} {inst.params} {inst.details}")
        print(f"{report.name}: {'PASS' if report.passed else 'FAIL'} "
              f"({len(report.instances)} instances, {report.wall_time:.1f}s)")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_subgroups(args) -> int:
    rows = []
    for T in all_subgroups(args.q):
        N = normalizer_in_sym(T)
        rows.append({
            "order": T.order,
            "generators": [g.cycle_str() for g in T.generators],
            "normalizer_order": N.order,
            "normalizer_2_transitive": is_2_transitive(N) if T.n >= 2 else False,
        })
    if args.json:
        print(json.dumps(rows))
    else:
        for r in rows:
            gens = "; ".join(r["generators"]) or "()"
            print(f"order {r['order']:>4}  <{gens}>  normalizer {r['normalizer_order']}"
                  f"{'  2-transitive' if r['normalizer_2_transitive'] else ''}")
        print(f"{len(rows)} subgroups of S_{args.q}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hamnt", description="Codes in Hamming graphs and their diagonal symmetry.")
    sub = ap.add_subparsers(dest="command", required=True)

    fam = sub.add_parser("family", help="write a family code in .code format")
    fam.add_argument("name", choices=["rep", "inj", "whalf", "all", "perm", "blowup"])
    fam.add_argument("--m", type=int)
    fam.add_argument("--q", type=int)
    fam.add_argument("--p", type=int)
    fam.add_argument("--group", help='generators, e.g. "(0 1 2);(0 1)(2 3)"')
    fam.add_argument("--input", "-i", help="input .code file for blowup")
    fam.add_argument("--output", "-o")
    fam.set_defaults(func=cmd_family)

    inv = sub.add_parser("invariants", help="delta, rho, cell sizes, Num profiles, connectivity")
    inv.add_argument("file")
    inv.add_argument("--json", action="store_true")
    inv.set_defaults(func=cmd_invariants)

    cert = sub.add_parser("certify", help="neighbour-transitivity certificate")
    cert.add_argument("file")
    cert.add_argument("--ambient", choices=["diag", "full"], default="diag")
    cert.add_argument("--json", action="store_true")
    cert.set_defaults(func=cmd_certify)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", help=", ".join(suites.SUITES))
    ver.add_argument("--m", type=int, action="append")
    ver.add_argument("--q", type=int, action="append")
    ver.add_argument("--p", type=int, action="append")
    ver.add_argument("--samples", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--workers", type=int, default=1)
    ver.add_argument("--full", action="store_true", help="run the extended grid")
    ver.add_argument("--counterexamples", metavar="DIR", help="write failing codes here")
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)

    sg = sub.add_parser("subgroups", help="list the subgroups of S_q")
    sg.add_argument("--q", type=int, required=True)
    sg.add_argument("--json", action="store_true")
    sg.set_defaults(func=cmd_subgroups)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 multi-component
closure, 4 dimension cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from . import alexander as alx
from .braiding import check_yang_baxter
from .center import decompose, verify_connected_sum
from .repn import (
    build_irreducible,
    build_projective,
    build_x_lambda,
    build_y_glued,
    check_module_relations,
)
from .scalar import DEFAULT_PRECISION, format_cyclotomic, to_complex
from .tangle import (
    PRESETS,
    BraidParseError,
    DimensionCapError,
    FramedBraidWord,
    MultiComponentError,
    closure_components,
    markov_conjugate,
    random_braid,
    random_word,
    markov_stabilize,
    parse_braid_word,
    preset,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LINK, EXIT_CAP = 0, 1, 2, 3, 4
SUITES = ("relations", "yang-baxter", "markov", "connected-sum", "theorem4", "symmetry")
SCHEMA = 1


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _add_knot(ap, required=True):
    g = ap.add_argument_group("knot")
    g.add_argument("--knot", help=f"preset name ({', '.join(PRESETS)})")
    g.add_argument("--braid", help='braid word, e.g. "s1 S2 s1 S2"')
    g.add_argument("--strands", type=int, help="number of strands for --braid")
    ap.set_defaults(knot_required=required)


def _add_common(ap):
    ap.add_argument("--p", type=int, required=True, help="root of unity order, q = exp(pi i / p)")
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    ap.add_argument("--precision", type=int, help="mantissa bits for the complex backend")
    ap.add_argument("--tolerance", type=float, default=1e-6)
    ap.add_argument("--framing-correct", action="store_true", help="multiply by ribbon^-framing")
    ap.add_argument("--cap", type=int, help="largest dim(M)^n allowed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="logknot", description="Logarithmic knot invariants of the restricted quantum sl2.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="a_s and b_s^+- of a knot")
    _add_common(c)
    _add_knot(c)

    j = sub.add_parser("jones", help="colored Jones invariant J_s (framing corrected)")
    _add_common(j)
    _add_knot(j)
    j.add_argument("--s", type=int, required=True)

    a = sub.add_parser("alexander", help="colored Alexander invariant O_lam and its derivative")
    _add_common(a)
    _add_knot(a)
    a.add_argument("--lam", type=_complex_arg, required=True)
    a.add_argument("--derivative", action="store_true")
    a.add_argument("--step", type=float, default=alx.DEFAULT_STEP)

    v = sub.add_parser("verify", help="run verification suites")
    _add_common(v)
    _add_knot(v, required=False)
    v.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default: all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=10)

    sub.add_parser("presets", help="list preset knots")
    return ap


def _knot(args) -> FramedBraidWord | None:
    if args.knot and args.braid is not None:
        raise BraidParseError("give either --knot or --braid, not both")
    if args.knot:
        return preset(args.knot)
    if args.braid is not None:
        if args.strands is None:
            raise BraidParseError("--braid needs --strands")
        return parse_braid_word(args.braid, args.strands)
    if args.knot_required:
        raise BraidParseError("no knot given: use --knot or --braid/--strands")
    return None


def _precision(args) -> int:
    if args.precision is not None:
        return args.precision
    return int(os.environ.get("LOGKNOT_PRECISION", DEFAULT_PRECISION))


def _approx(x, digits=12) -> str:
    z = complex(to_complex(x, 64)) if hasattr(x, "field") else complex(x)
    re, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    return f"{re:.{digits}g}{im:+.{digits}g}j"


def _exact_cell(x) -> str:
    return format_cyclotomic(x) if hasattr(x, "field") else ""


def _emit(rows, meta, fmt, out):
    """rows: list of (family, s, value)."""
    if fmt == "json":
        doc = {"schema": SCHEMA, **meta}
        for fam, s, v in rows:
            doc.setdefault(fam, []).append({"s": s, "exact": _exact_cell(v) or None, "approx": _approx(v)})
        json.dump(doc, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "s", "exact", "approx"])
        for fam, s, v in rows:
            w.writerow([fam, s, _exact_cell(v), _approx(v)])
    else:
        knot = meta.get("knot", {})
        out.write(f"p = {meta['p']}  braid = {knot.get('braid')!r}  strands = {knot.get('strands')}  framing = {knot.get('framing')}\n")
        width = max((len(_exact_cell(v)) for _, _, v in rows), default=5)
        for fam, s, v in rows:
            out.write(f"{fam:<8} {s:>3}  {_exact_cell(v):<{width}}  ~ {_approx(v)}\n")


def _meta(args, b: FramedBraidWord, framing: int):
    return {"p": args.p, "knot": {"braid": str(b), "strands": b.strands, "framing": framing}}


def cmd_compute(args, out) -> int:
    b = _knot(args)
    dec = decompose(b, args.p, framing_correct=args.framing_correct)
    rows = list(dec.items())
    meta = _meta(args, b, b.framing)
    meta["framing_corrected"] = bool(args.framing_correct)
    _emit(rows, meta, args.format, out)
    return EXIT_OK


def cmd_jones(args, out) -> int:
    from .center import colored_jones

    b = _knot(args)
    val = colored_jones(b, args.s, args.p)
    _emit([("jones", args.s, val)], _meta(args, b, b.framing), args.format, out)
    return EXIT_OK


def cmd_alexander(args, out) -> int:
    b = _knot(args)
    prec = _precision(args)
    rows = []
    if args.derivative:
        ev = alx.alexander_derivative(b, args.p, args.lam, args.step, prec)
        if ev.value is not None:
            rows.append(("O", str(args.lam), ev.value))
        rows.append(("dO", str(args.lam), ev.derivative))
        rows.append(("dO_err", str(args.lam), ev.error))
    else:
        rows.append(("O", str(args.lam), alx.colored_alexander(b, args.p, args.lam, prec)))
    meta = _meta(args, b, b.framing)
    meta["precision"] = prec
    _emit(rows, meta, args.format, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites; each yields (label, passed, detail)


def _modules(p, precision):
    mods = [build_irreducible(p, a, s) for a in (1, -1) for s in range(1, p + 1)]
    mods += [build_projective(p, a, t) for a in (1, -1) for t in range(1, p)]
    for lam in (0.37, 1.61 + 0.2j):
        mods.append(build_x_lambda(p, lam, precision))
        mods += [build_y_glued(p, lam, s, precision) for s in range(1, p)]
    return mods


def suite_relations(p, args, knot):
    for M in _modules(p, _precision(args)):
        rep = check_module_relations(M)
        detail = "; ".join(rep.failures()) or ("exact" if M.exact else "tol 1e-10")
        yield M.name, rep.passed, detail


def suite_yang_baxter(p, args, knot):
    mods = [build_irreducible(p, 1, 2)] if p >= 2 else []
    if p == 2:
        mods.append(build_projective(p, 1, 1))
    for M in mods:
        rep = check_yang_baxter(M)
        yield M.name, rep.passed, f"residual {rep.residual:g}"


def markov_variants(b: FramedBraidWord, rng: random.Random):
    """(label, word, framing_correct) variants sharing the invariant of ``b``."""
    g = random_word(rng, b.strands, 4)
    yield "conjugate", markov_conjugate(b, g), False
    for sign in (1, -1):
        for mode in ("tau", "sigma"):
            yield f"stabilize {mode}{'+' if sign > 0 else '-'}", markov_stabilize(b, sign, mode), True


def suite_markov(p, args, knot):
    rng = random.Random(args.seed)
    for case in range(args.cases):
        b = knot if knot is not None and case == 0 else random_braid(rng)
        ref = decompose(b, p)
        ref_fc = decompose(b, p, framing_correct=True)
        for label, w, fc in markov_variants(b, rng):
            got = decompose(w, p, framing_correct=fc)
            yield f"{b} | {label}", got == (ref_fc if fc else ref), str(w)
        # move (ii) itself: b tau_n^e and i(b) sigma_n^e have equal framed invariants
        for sign in (1, -1):
            lhs = decompose(markov_stabilize(b, sign, "tau"), p)
            rhs = decompose(markov_stabilize(b, sign, "sigma"), p)
            yield f"{b} | move ii {'+' if sign > 0 else '-'}", lhs == rhs, ""


def suite_connected_sum(p, args, knot):
    pairs = [("trefoil", "figure8"), ("trefoil", "trefoil")]
    for k1, k2 in pairs:
        rep = verify_connected_sum(preset(k1), preset(k2), p)
        yield f"{k1} # {k2}", rep.passed, "; ".join(rep.failures) or "exact"


def _knots(knot):
    return [knot] if knot is not None else [preset("trefoil"), preset("figure8")]


def suite_theorem4(p, args, knot):
    for b in _knots(knot):
        rep = alx.verify_theorem4(b, p, tol=args.tolerance, precision=_precision(args))
        yield f"theorem4 {b}", rep.passed, f"worst {rep.worst:.2e}"


def suite_symmetry(p, args, knot):
    for b in _knots(knot):
        rep = alx.verify_symmetry(b, p, tol=args.tolerance, precision=_precision(args))
        yield f"symmetry {b}", rep.passed, f"worst {rep.worst:.2e}"


_SUITE_FUNCS = {
    "relations": suite_relations,
    "yang-baxter": suite_yang_baxter,
    "markov": suite_markov,
    "connected-sum": suite_connected_sum,
    "theorem4": suite_theorem4,
    "symmetry": suite_symmetry,
}


def cmd_verify(args, out) -> int:
    knot = _knot(args)
    suites = args.suite or list(SUITES)
    results = []
    for name in suites:
        for label, ok, detail in _SUITE_FUNCS[name](args.p, args, knot):
            results.append({"suite": name, "case": label, "passed": bool(ok), "detail": detail})
    failed = [r for r in results if not r["passed"]]
    if args.format == "json":
        json.dump({"schema": SCHEMA, "p": args.p, "results": results, "passed": not failed}, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.DictWriter(out, ["suite", "case", "passed", "detail"], lineterminator="\n")
        w.writeheader()
        w.writerows(results)
    else:
        for r in results:
            out.write(f"[{'PASS' if r['passed'] else 'FAIL'}] {r['suite']:<14} {r['case']}  {r['detail']}\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} passed\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_presets(args, out) -> int:
    for name, (text, n) in PRESETS.items():
        b = parse_braid_word(text, n)
        out.write(f"{name:<11} {text!r:<20} strands={n} writhe={b.writhe}\n")
    return EXIT_OK


_COMMANDS = {
    "compute": cmd_compute,
    "jones": cmd_jones,
    "alexander": cmd_alexander,
    "verify": cmd_verify,
    "presets": cmd_presets,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "p", 2) < 2:
        print("error: --p must be >= 2", file=sys.stderr)
        return EXIT_INPUT
    saved = os.environ.get("LOGKNOT_DIM_CAP")
    if getattr(args, "cap", None) is not None:
        os.environ["LOGKNOT_DIM_CAP"] = str(args.cap)  # the flag wins over the environment
    try:
        return _COMMANDS[args.command](args, out)
    except BraidParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MultiComponentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LINK
    except DimensionCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop("LOGKNOT_DIM_CAP", None)
        else:
            os.environ["LOGKNOT_DIM_CAP"] = saved


def run(argv=None) -> tuple[int, str]:
    """Run the CLI, returning (exit code, captured stdout)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``symtrace VERB [options]``.

Every verb is a thin wrapper over library calls.  Output is JSON by default
and identical for identical arguments; ``--timing`` adds wall-clock fields.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import SymtraceError
from .exterior import DEFAULT_BUDGET, exterior_power_bruteforce, exterior_power_diagonal
from .fields import GF, cyclo_create, gf_create
from .paperlab import PROP_IDS, predict_exterior_trace_form, predict_trace_form, verify
from .quadform import DiagForm, QuadForm, diagonalize, is_isometric, pretty_diag, witt_decompose
from .symalg import SymbolAlgebra, find_zero_divisor, paired_basis_order, trace_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_field(spec: str):
    if spec == "cyclo":
        return ("cyclo", None)
    if spec.startswith("gf:"):
        try:
            return ("gf", int(spec[3:]))
        except ValueError:
            pass
    raise UsageError(f"--field must be 'gf:P' or 'cyclo', got {spec!r}")


def _make_ctx(args):
    if args.field is None:
        raise UsageError("--field is required")
    if args.n is None:
        raise UsageError("--n is required")
    kind, p = _parse_field(args.field)
    return cyclo_create(args.n) if kind == "cyclo" else gf_create(p, args.n)


def _scalar(ctx, text: str):
    try:
        value = Fraction(text)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a number") from None
    if ctx.kind == GF and value.denominator != 1:
        raise UsageError("field elements over GF(p) must be integers")
    return value if ctx.kind != GF else int(value)


def _algebra(args) -> SymbolAlgebra:
    ctx = _make_ctx(args)
    if args.a is None or args.b is None:
        raise UsageError("--a and --b are required")
    return SymbolAlgebra(ctx, args.n, _scalar(ctx, args.a), _scalar(ctx, args.b), omega_power=args.omega_power)


def _load_form(args):
    """A form from --input JSON, or the trace form of the algebra given by flags."""
    if args.input:
        try:
            with open(args.input) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        if "gram" in obj or "sparse" in obj:
            return QuadForm.from_json(obj)
        if "terms" in obj or "entries" in obj:
            return DiagForm.from_json(obj).to_quadform()
        raise UsageError(f"{args.input} holds neither a Gram matrix nor a diagonal form")
    return trace_form(_algebra(args))


def _basis_label(i: int, j: int) -> str:
    x = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
    y = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
    return (x + y) or "1"


def _matrix_text(rows, labels) -> str:
    cells = [[str(v) for v in row] for row in rows]
    width = max([len(c) for row in cells for c in row] + [len(l) for l in labels])
    lines = [" " * width + " | " + " ".join(l.rjust(width) for l in labels)]
    for label, row in zip(labels, cells):
        lines.append(label.rjust(width) + " | " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# verbs


def cmd_gram(args):
    S = _algebra(args)
    T = trace_form(S)
    n = S.n
    order = paired_basis_order(n) if args.order == "paired" else [divmod(t, n) for t in range(n * n)]
    perm = [i * n + j for i, j in order]
    labels = [_basis_label(i, j) for i, j in order]
    rows = [[T.entry(r, c) for c in perm] for r in perm]
    if args.format == "pretty":
        return _matrix_text(rows, labels), EXIT_OK
    return {
        "algebra": S.to_json(),
        "order": args.order,
        "basis": labels,
        "permutation": perm,
        "gram": [[v.to_json() for v in row] for row in rows],
    }, EXIT_OK


def cmd_diagonalize(args):
    phi = _load_form(args)
    d, _ = diagonalize(phi)
    if args.format == "pretty":
        return pretty_diag(d), EXIT_OK
    return {"diagonal": d.to_json(), "pretty": pretty_diag(d)}, EXIT_OK


def cmd_witt(args):
    w = witt_decompose(_load_form(args))
    if args.format == "pretty":
        return w.pretty(), EXIT_OK
    return {**w.to_json(), "hyperbolic": w.is_hyperbolic, "pretty": w.pretty()}, EXIT_OK


def cmd_exterior(args):
    if args.k is None:
        raise UsageError("--k is required")
    phi = _load_form(args)
    out = {"k": args.k, "dim": phi.dim}
    pretty = []
    if args.method in ("brute", "both"):
        brute = exterior_power_bruteforce(phi, args.k, args.budget)
        out["brute"] = brute.to_json()
        pretty.append(f"brute: dim {brute.dim}")
    if args.method in ("diag", "both"):
        d, _ = diagonalize(phi)
        if d.radical_dim:
            raise UsageError("the diagonal method needs a nondegenerate form")
        fast = exterior_power_diagonal(d, args.k)
        out["diag"] = fast.to_json()
        pretty.append(f"diag: {pretty_diag(fast)}")
    if args.method == "both" and phi.ctx.kind == GF:
        out["isometric"] = is_isometric(brute, fast)
        pretty.append(f"isometric: {out['isometric']}")
    if args.format == "pretty":
        return "\n".join(pretty), EXIT_OK
    return out, EXIT_OK


def cmd_predict(args):
    if args.n is None:
        raise UsageError("--n is required")
    if args.k is None:
        pred = predict_trace_form(args.n)
    else:
        pred = predict_exterior_trace_form(args.n, args.k, corrected=args.corrected)
    if args.format == "pretty":
        return pred.form.pretty(), EXIT_OK
    return pred.to_json(), EXIT_OK


def cmd_verify(args):
    if args.prop is None:
        raise UsageError("--prop is required")
    params = {"budget": args.budget}
    if args.n is not None:
        params["ns"] = [args.n]
    if args.field is not None:
        kind, p = _parse_field(args.field)
        if kind == "gf":
            params["primes"] = [p]
    if args.trials is not None:
        params["trials"] = args.trials
    if args.corrected:
        params["corrected"] = True
    report = verify(args.prop, params, args.seed)
    code = EXIT_OK if report.ok else EXIT_FAIL
    if args.format == "pretty":
        lines = [f"{args.prop}: {report.passed} passed, {report.failed} failed"]
        lines += [f"FAIL {json.dumps(i.params)}" for i in report.failures()]
        return "\n".join(lines), code
    return report.to_json(timing=args.timing), code


def cmd_zerodiv(args):
    S = _algebra(args)
    trials = 100 if args.trials is None else args.trials
    hit = find_zero_divisor(S, trials, args.seed)
    if hit is None:
        out = {"found": False, "trials": trials, "verdict": "Inconclusive"}
    else:
        out = {"found": True, "u": hit.u.to_json(), "v": hit.v.to_json(), "trials_used": hit.trials_used}
    if args.format == "pretty":
        return (f"u = {hit.u}\nv = {hit.v}" if hit else "no zero divisor found (inconclusive)"), EXIT_OK
    return out, EXIT_OK


VERBS = {
    "gram": cmd_gram,
    "diagonalize": cmd_diagonalize,
    "witt": cmd_witt,
    "exterior": cmd_exterior,
    "predict": cmd_predict,
    "verify": cmd_verify,
    "zerodiv": cmd_zerodiv,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symtrace", description="Trace forms of symbol algebras.")
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("--field", help="gf:P or cyclo")
    parser.add_argument("--n", type=int)
    parser.add_argument("--a")
    parser.add_argument("--b")
    parser.add_argument("--omega-power", type=int, default=1, dest="omega_power")
    parser.add_argument("--k", type=int)
    parser.add_argument("--input", help="JSON file holding a Gram matrix or diagonal form")
    parser.add_argument("--method", choices=("brute", "diag", "both"), default="brute")
    parser.add_argument("--order", choices=("lex", "paired"), default="lex")
    parser.add_argument("--prop", choices=PROP_IDS)
    parser.add_argument("--corrected", action="store_true", help="use the sign-corrected odd-degree exterior prediction")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int)
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    parser.add_argument("--format", choices=("json", "pretty"), default="json")
    parser.add_argument("--timing", action="store_true")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    start = time.perf_counter()
    try:
        out, code = VERBS[args.verb](args)
    except UsageError as exc:
        print(f"symtrace: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (SymtraceError, ValueError, ZeroDivisionError) as exc:
        out, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_FAIL
    if isinstance(out, dict) and args.timing and args.verb != "verify":
        out["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    if isinstance(out, dict):
        print(json.dumps(out, indent=2, ensure_ascii=False), file=stdout)
    else:
        print(out, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

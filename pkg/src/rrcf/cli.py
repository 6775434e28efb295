"""Command-line front end: eval, recognize, verify, reproduce, search, catalog.

Exit codes: 0 success (or nothing recognized), 1 refuted, 2 inconclusive,
3 usage, 4 convergence or domain failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable, Optional, Sequence

from mpmath import mp, mpf

from . import invariants as inv
from . import qseries
from .catalog import A_VALUES, CATALOG, catalog_json
from .precision import (
    ConvergenceError,
    DomainError,
    MismatchError,
    PrecisionCtx,
    PreconditionError,
    Real,
    RRCFError,
    SurdArg,
)
from .radicals import parse as parse_radical
from .recognition.field import recognize_in_field
from .recognition.minpoly import recognize_minpoly
from .recognition.yi import yi_n_for, yi_recognize
from .verify.certificate import (
    INCONCLUSIVE,
    REFUTED,
    SUPPORTED,
    Certificate,
    certify,
)
from .verify.checks import check_companion, check_icosahedral, check_order25, check_recursions, r5_from_a
from .verify.theorems import THEOREM_IDS, order25_sources, reproduce_theorem

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3, 4

EVALUATORS: dict[str, Callable[[SurdArg, PrecisionCtx], Real]] = {
    "f": qseries.eval_f_neg_q,
    "theta2": qseries.eval_theta2,
    "theta3": qseries.eval_theta3,
    "R": qseries.eval_R_product,
    "R-cf": qseries.eval_R_cf,
    "lambda-star": inv.lambda_star,
    "lambda": inv.lambda_of_tau,
    "J": inv.klein_J,
    "G": inv.ramanujan_G,
    "g": inv.ramanujan_g,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _surd(text: str) -> SurdArg:
    try:
        return SurdArg.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_range(text: str) -> range:
    try:
        if "-" in text:
            lo, hi = (int(t) for t in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected N or A-B, got {text!r}") from exc
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _int_set(text: str) -> list[int]:
    try:
        vals = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not vals or vals[0] < 1:
        raise argparse.ArgumentTypeError(f"bad integer set {text!r}")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=300, help="reported precision in decimal digits (>= 50)")
    common.add_argument("--guard", type=int, default=50, help="guard digits (>= 20)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", type=Path, help="write results to this file (JSON Lines for verify/search)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized sweeps")

    p = _Parser(prog="rrcf", description="High-precision evaluation and certification of R(q) singular values.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a function at q = exp(-pi sqrt(r))")
    e.add_argument("fn", choices=sorted(EVALUATORS))
    e.add_argument("arg", type=_surd, metavar="R", help="r as num/den")

    r = sub.add_parser("recognize", parents=[common], help="recognize a value as an algebraic number")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--yi", type=_surd, metavar="N", help="Yi's s_n and a at n (q = exp(-2 pi sqrt(n/5)))")
    src.add_argument("--eval", nargs=2, metavar=("FN", "R"), help="a value from the eval machinery")
    src.add_argument("--literal", metavar="DECIMAL", help="a decimal string")
    src.add_argument("--file", type=Path, help="file holding a decimal string")
    r.add_argument("--degree", type=int, default=8, help="maximum degree of the minimal polynomial")
    r.add_argument("--basis", type=_int_set, help="comma-separated squarefree integers: recognize in Q(sqrt b, ...)")

    v = sub.add_parser("verify", parents=[common], help="certify identities")
    vsub = v.add_subparsers(dest="target", required=True, parser_class=_Parser)
    vi = vsub.add_parser("identities", parents=[common], help="companion identities and recursions at random q")
    vi.add_argument("--q", action="append", metavar="Q", help="nome in (0, 1); repeatable")
    vi.add_argument("--count", type=int, default=20, help="number of random q when --q is absent")
    vo = vsub.add_parser("order25", parents=[common], help="order-25 relation")
    vo.add_argument("n", nargs="?", type=int, choices=(130, 190, 240), help="use the built-in alpha, beta for n")
    vo.add_argument("--alpha", help="alpha as a radical expression or decimal")
    vo.add_argument("--beta", help="beta as a radical expression or decimal")
    vc = vsub.add_parser("icosahedral", parents=[common], help="icosahedral equation at q = exp(-pi sqrt(r))")
    vc.add_argument("arg", type=_surd, metavar="R", help="r as num/den")
    vc.add_argument("--a", dest="a_expr", help="take R^5 = sqrt(a^2+1) - a from this radical expression")

    rp = sub.add_parser("reproduce", parents=[common], help="run a theorem pipeline")
    rp.add_argument("theorem", choices=THEOREM_IDS + ("all",))

    s = sub.add_parser("search", parents=[common], help="sweep r = num/den through the Yi pipeline")
    s.add_argument("--num", type=_int_range, required=True, help="numerator range A-B")
    s.add_argument("--den", type=_int_set, required=True, help="denominator set, e.g. 5,15")
    s.add_argument("--max-degree", type=int, default=8, help="maximum degree for minimal polynomials")

    c = sub.add_parser("catalog", parents=[common], help="dump the closed-form catalog as JSON")
    c.add_argument("--check", action="store_true", help="compare each entry against its product value")
    return p


# -- output helpers ----------------------------------------------------------

def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    out = json.dumps(payload, sort_keys=True) if args.json else text
    if args.out is not None and args.command not in ("verify", "search"):
        args.out.write_text(out + "\n", encoding="utf-8")
    else:
        print(out)


def _shown(x: Real, ctx: PrecisionCtx) -> str:
    return x.nstr(ctx.digits - ctx.guard)


def _exit_for(verdicts: Iterable[str]) -> int:
    vs = set(verdicts)
    if REFUTED in vs:
        return EXIT_REFUTED
    if INCONCLUSIVE in vs:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _write_certs(args: argparse.Namespace, certs: Sequence[Certificate]) -> None:
    if args.out is not None:
        with args.out.open("a", encoding="utf-8") as fh:
            for c in certs:
                fh.write(c.to_jsonl() + "\n")
    if args.json:
        for c in certs:
            print(c.to_jsonl())
    else:
        for c in certs:
            print(c.line())


def _value_source(text: str) -> Callable[[PrecisionCtx], mpf]:
    """A radical expression or decimal literal, evaluated at the caller's precision."""
    try:
        float(text)
    except ValueError:
        pass
    else:
        return lambda c: _literal(text, c)
    try:
        expr = parse_radical(text)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"cannot parse value {text!r}: {exc}") from exc

    def value(c: PrecisionCtx) -> mpf:
        with c.working():
            return expr.evaluate()
    return value


# -- commands ------------------------------------------------------------------

def cmd_eval(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    val = EVALUATORS[args.fn](args.arg, ctx)
    shown = _shown(val, ctx)
    _emit(args, {"fn": args.fn, "arg": str(args.arg), "digits": ctx.digits, "value": shown}, shown)
    return EXIT_OK


def _literal(text: str, ctx: PrecisionCtx) -> mpf:
    with ctx.working():
        try:
            return mpf(text.strip())
        except ValueError as exc:
            raise UsageError(f"not a decimal number: {text.strip()[:40]!r}") from exc


def _file_value(path: Path, ctx: PrecisionCtx) -> Real:
    try:
        text = path.read_text(encoding="utf-8").strip()
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    digits = sum(ch.isdigit() for ch in text.split("e")[0].split("E")[0].lstrip("+-0."))
    return Real(_literal(text, ctx), digits)


def cmd_recognize(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    if args.yi is not None:
        res = yi_recognize(args.yi, ctx, basis=args.basis, degree_max=args.degree)
        payload = res.to_json()
        payload["verdict"] = "recognized" if res.recognized else "none"
        lines = [f"n = {res.n}  (r = {res.r})", f"s = {res.s.nstr(40)}"]
        if res.s_nested is not None:
            lines.append(f"s = {res.s_nested}")
        elif res.s_field is not None:
            lines.append(f"s = {res.s_field}")
        if res.s_minpoly is not None:
            lines.append(f"s: root #{res.s_minpoly.root_index} of {res.s_minpoly}")
        lines.append(f"a = {res.a_field}" if res.a_field is not None else "a: none")
        if not res.recognized:
            lines.append("none")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK

    if args.eval is not None:
        fn, arg_text = args.eval
        if fn not in EVALUATORS:
            raise UsageError(f"unknown function {fn!r}; choose from {', '.join(sorted(EVALUATORS))}")
        try:
            arg = SurdArg.parse(arg_text)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        source: Any = lambda c: EVALUATORS[fn](arg, c)
        label = f"{fn}({arg})"
    elif args.literal is not None:
        source = _literal(args.literal, ctx)
        label = args.literal
    else:
        source = _file_value(args.file, ctx)
        label = str(args.file)

    if args.basis is not None:
        fe = recognize_in_field(source, args.basis, ctx)
        payload = {"value": label, "basis": args.basis, "verdict": "none" if fe is None else "recognized",
                   "field_element": None if fe is None else str(fe.trimmed())}
        _emit(args, payload, "none" if fe is None else str(fe.trimmed()))
        return EXIT_OK

    cand = recognize_minpoly(source, args.degree, ctx)
    payload = {"value": label, "verdict": "none" if cand is None else "recognized",
               "candidate": None if cand is None else cand.to_json()}
    text = "none" if cand is None else f"{cand}  (real root #{cand.root_index}, {cand.confidence})"
    _emit(args, payload, text)
    return EXIT_OK


def _identities(args: argparse.Namespace, ctx: PrecisionCtx) -> list[Certificate]:
    if args.q:
        qs: list[Any] = [_literal(t, ctx) for t in args.q]
    else:
        rng = random.Random(0 if args.seed is None else args.seed)
        qs = [mpf(rng.uniform(1e-3, 0.6)) for _ in range(args.count)]
    certs = []
    for q in qs:
        certs.append(check_companion(q, ctx))
        certs.append(check_recursions(q, ctx))
    return certs


def cmd_verify(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    if args.target == "identities":
        certs = _identities(args, ctx)
    elif args.target == "order25":
        if args.n is not None:
            alpha, beta = order25_sources(args.n)
            claim = f"order25[n={args.n}]"
        elif args.alpha and args.beta:
            alpha, beta = _value_source(args.alpha), _value_source(args.beta)
            claim = "order25"
        else:
            raise UsageError("give n (130, 190 or 240) or both --alpha and --beta")
        certs = [check_order25(alpha, beta, ctx, claim_id=claim)]
    else:
        r = args.arg
        tau_arg = r.scaled(Fraction(1, 4))  # R(exp(-pi sqrt r)) pairs with lambda(i sqrt(r/4))
        lam = lambda c: inv.lambda_of_tau(tau_arg, c).value
        if args.a_expr:
            a = _value_source(args.a_expr)

            def rval(c: PrecisionCtx) -> mpf:
                with c.working():
                    return mp.root(r5_from_a(a(c)), 5)
        else:
            rval = lambda c: qseries.eval_R_product(r, c).value
        certs = [check_icosahedral(rval, lam, ctx, claim_id=f"icosahedral[r={r}]")]
    _write_certs(args, certs)
    return _exit_for(c.verdict for c in certs)


def cmd_reproduce(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    ids = THEOREM_IDS if args.theorem == "all" else (args.theorem,)
    bundles = [reproduce_theorem(t, ctx) for t in ids]
    lines = []
    for b in bundles:
        tail = f"  (failing stage: {b.failing_stage})" if b.failing_stage else ""
        lines.append(f"{b.theorem_id}: {b.verdict}{tail}")
        lines.extend("  " + c.line() for c in b.certificates)
    payload = [b.to_json() for b in bundles]
    _emit(args, payload if args.theorem == "all" else payload[0], "\n".join(lines))
    return _exit_for(b.verdict for b in bundles)


def search_point(num: int, den: int, digits: int, guard: int, degree_max: int = 8) -> dict[str, Any]:
    """Run the Yi pipeline at r = num/den; every failure is captured in the record."""
    key = f"{num}/{den}"
    rec: dict[str, Any] = {"key": key, "n": num, "d": den, "digits": digits}
    try:
        ctx = PrecisionCtx(digits, guard)
        r = SurdArg(num, den)
        rec["r"] = str(r)
        res = yi_recognize(yi_n_for(r), ctx, degree_max=degree_max)
        rec["recognized"] = res.a_field is not None
        rec["form"] = str(res.a_field) if res.a_field is not None else None
        rec["s_minpoly"] = res.s_minpoly.to_json() if res.s_minpoly is not None else None
        rec["verdict"] = None
        if res.a_field is not None:
            a_val = res.a_field

            def residual(c: PrecisionCtx) -> mpf:
                with c.working():
                    return abs(qseries.eval_R_product(r, c).value ** 5 - r5_from_a(a_val.evaluate(c).value))

            # discovered forms are numerical evidence, never proofs
            rec["verdict"] = certify(f"search[{key}]", residual, ctx, cap=SUPPORTED).verdict
            known = [k for k, v in A_VALUES.items() if k.endswith(f"_{num}_{den}")]
            if known:
                rec["matches"] = known[0]
    except (RRCFError, ArithmeticError, ValueError) as exc:
        rec["recognized"] = False
        rec["form"] = None
        rec["error"] = f"{type(exc).__name__}: {exc}"
    return rec


def _done_keys(path: Optional[Path]) -> set[str]:
    if path is None or not path.exists():
        return set()
    keys = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            try:
                keys.add(json.loads(line)["key"])
            except (json.JSONDecodeError, KeyError):
                continue
    return keys


def cmd_search(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    done = _done_keys(args.out)
    todo = [(n, d) for d in args.den for n in args.num if f"{n}/{d}" not in done]
    sink = args.out.open("a", encoding="utf-8") if args.out is not None else None

    def record(rec: dict[str, Any]) -> None:
        # single writer: only the parent process touches the results file
        line = json.dumps(rec, sort_keys=True)
        if sink is not None:
            sink.write(line + "\n")
            sink.flush()
        if args.json or sink is None:
            print(line)
        else:
            status = rec.get("error") or (rec["form"] if rec["recognized"] else "none")
            print(f"{rec['key']:>8}  {status}")

    try:
        if args.jobs == 1:
            for n, d in todo:
                record(search_point(n, d, ctx.digits, ctx.guard, args.max_degree))
        else:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                futures = [pool.submit(search_point, n, d, ctx.digits, ctx.guard, args.max_degree) for n, d in todo]
                for fut in futures:
                    record(fut.result())
    finally:
        if sink is not None:
            sink.close()
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace, ctx: PrecisionCtx) -> int:
    payload = catalog_json()
    if not args.check:
        _emit(args, payload, json.dumps(payload, indent=2))
        return EXIT_OK
    lines, verdicts, rows = [], [], []
    for entry in CATALOG.values():
        def residual(c: PrecisionCtx, e=entry) -> mpf:
            with c.working():
                return abs(e.evaluate(c).value - e.reference_value(c).value)
        cap = SUPPORTED if entry.status == "conjectural" else None
        cert = certify(entry.name, residual, ctx, cap=cap)
        verdicts.append(cert.verdict)
        rows.append(cert.to_json())
        lines.append(cert.line())
    _emit(args, rows, "\n".join(lines))
    return _exit_for(verdicts)


COMMANDS = {
    "eval": cmd_eval,
    "recognize": cmd_recognize,
    "verify": cmd_verify,
    "reproduce": cmd_reproduce,
    "search": cmd_search,
    "catalog": cmd_catalog,
}


def _fail(args: Optional[argparse.Namespace], code: int, exc: BaseException) -> int:
    msg = f"{type(exc).__name__}: {exc}"
    if args is not None and getattr(args, "json", False):
        print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}, sort_keys=True))
    else:
        print(f"rrcf: {msg}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = PrecisionCtx(args.digits, args.guard)
    except DomainError as exc:
        return _fail(args, EXIT_USAGE, exc)
    try:
        return COMMANDS[args.command](args, ctx)
    except (UsageError, PreconditionError) as exc:
        return _fail(args, EXIT_USAGE, exc)
    except (DomainError, ConvergenceError, MismatchError, ArithmeticError) as exc:
        return _fail(args, EXIT_NUMERIC, exc)


if __name__ == "__main__":
    sys.exit(main())

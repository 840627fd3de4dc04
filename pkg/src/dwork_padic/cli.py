"""Command-line front end.

Exit status: 0 when everything checked matches, 1 on any mismatch, 2 on
usage errors or parameters outside the formula's hypotheses.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .cache import GammaStore
from .dwork import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    DworkInstance,
    InstanceError,
    auto_precision,
    brute_count_affine,
    conjecture_count,
    projective_count_from_affine,
    theorem_count,
    verify_corollary,
    verify_theorem,
)
from .field import FieldDesc, FieldError, build_field
from .gfunc import GSpec, dwork_G, evaluate_G, set_gamma_store
from .identities import (
    check_asum_consistency,
    check_floor_identity,
    check_gamma_product,
    check_gauss_product,
    check_orthogonality,
    check_reflection,
)


class UsageError(Exception):
    pass


def _add_common(sp: argparse.ArgumentParser, need_d: bool = True) -> None:
    sp.add_argument("--p", type=int, required=True, help="odd prime characteristic")
    sp.add_argument("--r", type=int, default=1, help="extension degree (q = p^r)")
    sp.add_argument("--d", type=int, required=need_d, help="odd prime degree")
    sp.add_argument("--lambda", dest="lam", default="all",
                    help="element encoding of lambda, or 'all'")
    sp.add_argument("--precision", type=int, help="p-adic precision M")
    sp.add_argument("--slack", type=int, help="override the working-precision slack")
    sp.add_argument("--parallel", type=int, default=1, help="worker processes for enumeration")
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sp.add_argument("--cache-dir", help="directory for the Gamma_p sweep cache")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="maximum number of enumerated tuples")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwork-padic",
        description="Point counts on Dwork hypersurfaces via p-adic hypergeometric functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="count points on X_lambda^d(F_q)")
    sp.add_argument("--method", choices=("brute", "theorem", "conjecture"), default="brute")
    _add_common(sp)

    sp = sub.add_parser("gfun", help="evaluate nGn[a; b | t]")
    sp.add_argument("--a", required=True, help="comma separated upper parameters, e.g. 1/3,2/3")
    sp.add_argument("--b", required=True, help="comma separated lower parameters")
    sp.add_argument("--t", type=int, required=True, help="argument as element encoding")
    _add_common(sp, need_d=False)

    sp = sub.add_parser("verify", help="verify the count formula, the 2G2 transformation "
                                       "or the supporting identities")
    sp.add_argument("target", choices=("theorem", "corollary", "identities"))
    _add_common(sp, need_d=False)

    sp = sub.add_parser("cache", help="inspect or clear the Gamma_p cache")
    sp.add_argument("action", choices=("list", "clear"))
    sp.add_argument("--cache-dir", required=True)
    sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return parser


# ---------------------------------------------------------------------------


def _field(args) -> FieldDesc:
    try:
        return build_field(args.p, args.r)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def _lambdas(args, field: FieldDesc) -> list[int]:
    if args.lam == "all":
        return list(range(field.q))
    try:
        lam = int(args.lam)
    except ValueError:
        raise UsageError(f"--lambda must be an integer encoding or 'all', got {args.lam!r}") from None
    if not 0 <= lam < field.q:
        raise UsageError(f"--lambda {lam} is not an element encoding of F_{field.q}")
    return [lam]


def _instance(args, field: FieldDesc, lam: int) -> DworkInstance:
    if args.d is None:
        raise UsageError("--d is required for this command")
    return DworkInstance(args.d, field, lam)


def _precision(args, d: int, field: FieldDesc) -> int:
    return args.precision if args.precision is not None else auto_precision(d, field.q, field.p)


def _parse_params(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse parameter list {text!r}") from None


def cmd_count(args) -> tuple[list[dict], bool]:
    field = _field(args)
    docs = []
    for lam in _lambdas(args, field):
        inst = _instance(args, field, lam)
        doc: dict[str, Any] = {"d": inst.d, "p": field.p, "r": field.r, "lambda": lam}
        if args.method == "brute":
            n = brute_count_affine(inst, args.budget, args.parallel)
            doc.update(N_affine=n, projective=projective_count_from_affine(n, field.q))
        else:
            M = _precision(args, inst.d, field)
            doc["M"] = M
            doc["G_residue"] = dwork_G(inst, M, args.slack).residue
            if args.method == "theorem":
                doc["theorem_residue"] = theorem_count(inst, M, args.slack).residue
            else:
                doc["conjecture_residue"] = conjecture_count(inst, M, args.slack).residue
        docs.append(doc)
    return docs, True


def cmd_gfun(args) -> tuple[list[dict], bool]:
    field = _field(args)
    a, b = _parse_params(args.a), _parse_params(args.b)
    try:
        spec = GSpec(a, b, field.check(args.t), field)
    except (ValueError, FieldError) as exc:
        raise UsageError(str(exc)) from None
    M = args.precision if args.precision is not None else 4
    val = evaluate_G(spec, M, args.slack)
    try:
        residue = list(val.to_zq(M).coeffs)
    except ArithmeticError:
        residue = None
    return [{"spec": spec.to_json(), "M": M, "value": val.normalized().to_json(),
             "residue": residue}], True


def cmd_verify(args) -> tuple[list[dict], bool]:
    field = _field(args)
    docs = []
    if args.target == "theorem":
        for lam in _lambdas(args, field):
            inst = _instance(args, field, lam)
            rep = verify_theorem(inst, args.precision, slack=args.slack,
                                 budget=args.budget, workers=args.parallel)
            docs.append(rep.to_json())
        return docs, all(d["match_theorem"] for d in docs)
    if args.target == "corollary":
        ok = True
        for lam in _lambdas(args, field):
            rep = verify_corollary(field, lam, args.precision, slack=args.slack,
                                   budget=args.budget)
            ok = ok and rep.ok
            docs.append(rep.to_json())
        return docs, ok
    return _verify_identities(args, field)


def _verify_identities(args, field: FieldDesc) -> tuple[list[dict], bool]:
    """Run the identity ladder from pure integers up to full character sums."""
    M = args.precision if args.precision is not None else 4
    reports = []
    if args.d is not None:
        _instance(args, field, 0)
        reports.append(check_floor_identity(args.d, field))
    reports.append(check_orthogonality(field, M))
    for t in (2, 3, 6):
        if t % field.p:
            reports.append(check_gamma_product(field, t, M))
    reports.append(check_reflection(field, M))
    reports.append(check_gauss_product(field, M))
    if args.d is not None:
        for lam in _lambdas(args, field):
            if lam == 0:
                continue
            inst = _instance(args, field, lam)
            reports.append(check_asum_consistency(inst, args.precision, args.budget))
    docs = [r.to_json() for r in reports]
    return docs, all(r.passed for r in reports)


def cmd_cache(args) -> tuple[list[dict], bool]:
    store = GammaStore(args.cache_dir)
    if args.action == "clear":
        return [{"removed": store.clear()}], True
    return [{"p": p, "M": M, "path": str(path)} for p, M, path in store.entries()], True


# ---------------------------------------------------------------------------


def _flat(v):
    return json.dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else v)


def render(docs: list[dict], fmt: str) -> str:
    if fmt == "json":
        payload = docs[0] if len(docs) == 1 else docs
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        keys: list[str] = []
        for d in docs:
            keys.extend(k for k in d if k not in keys)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for d in docs:
            w.writerow({k: _flat(d.get(k)) for k in keys})
        return buf.getvalue()
    lines = []
    for d in docs:
        lines.append(" ".join(f"{k}={_flat(d[k])}" for k in d))
    return "\n".join(lines) + "\n"


COMMANDS = {"count": cmd_count, "gfun": cmd_gfun, "verify": cmd_verify, "cache": cmd_cache}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache_dir = getattr(args, "cache_dir", None)
    if args.command != "cache":
        set_gamma_store(GammaStore(cache_dir) if cache_dir else None)
    try:
        docs, ok = COMMANDS[args.command](args)
    except (UsageError, InstanceError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if cache_dir and args.command != "cache":
            set_gamma_store(None)
    out.write(render(docs, args.format))
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line interface.

Exit codes: 0 pass, 1 a verification failed, 2 bad usage or configuration.
JSON output is deterministic (sorted keys, rationals rendered ``p/q``).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import families, galois, modfunc, numeric
from .errors import FrickeError, LevelMismatch, NoSolution
from .modfunc import FracVec
from .qseries import QExp, eq_to_order

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# function registry


def _need_v(args):
    if not args.v:
        raise UsageError("this function needs --v a/N,b/N")
    v = FracVec.parse(args.v[0])
    if args.level is not None and v.level != args.level:
        raise LevelMismatch(f"vector {v} has level {v.level}, not --level {args.level}")
    return v


def _level(args, default=None):
    N = args.level if args.level is not None else default
    if N is None:
        raise UsageError("--level is required")
    return N


FUNCTIONS = {
    "j": lambda a, K: modfunc.j_invariant(K),
    "j-alt": lambda a, K: modfunc.j_from_e6(K),
    "delta": lambda a, K: modfunc.delta_norm(K),
    "e4": lambda a, K: modfunc.eisenstein(4, K),
    "e6": lambda a, K: modfunc.eisenstein(6, K),
    "wp": lambda a, K: modfunc.wp_norm(_need_v(a).raw, K),
    "fricke": lambda a, K: modfunc.fricke_f(_need_v(a).raw, K),
    "siegel": lambda a, K: modfunc.siegel_g(_need_v(a), K),
    "siegel12N": lambda a, K: modfunc.siegel12N(_need_v(a), K),
    "g14": lambda a, K: modfunc.g14_product(K),
    "g41": lambda a, K: modfunc.g41(K),
    "f1N": lambda a, K: modfunc.f1N(_level(a), K),
    "r": lambda a, K: modfunc.r_v(_need_v(a).raw, K),
    "s": lambda a, K: modfunc.s_v(_need_v(a).raw, K),
}


def _eval_function(name, args, tau):
    """Numeric value and tail estimate; direct routes where they exist."""
    if name == "siegel":
        return numeric.eval_siegel_direct(_need_v(args), tau), 0.0
    if name == "g14":
        return numeric.eval_g14(tau), 0.0
    if name == "j" and args.order is None:
        return numeric.eval_j(tau), 0.0
    K = args.order or 30
    return numeric.eval_qexp(FUNCTIONS[name](args, K), tau)


# ---------------------------------------------------------------------------
# identities


def _pairs_for_level(N, count, seed):
    if N == 4:
        return [(FracVec(4, 1, 0), FracVec(4, 0, 1))]
    vs = modfunc.vectors(N)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        u, v = rng.sample(vs, 2)
        if (u.level, u.a, u.b) != (v.level, v.a, v.b):
            out.append((u, v))
    return out


def identity_fricke_difference(args):
    N = _level(args, 4)
    K = args.order or 20
    if args.v and len(args.v) >= 2:
        pairs = [(FracVec.parse(args.v[0]), FracVec.parse(args.v[1]))]
    else:
        pairs = _pairs_for_level(N, args.pairs, args.seed)
    checks = []
    for u, v in pairs:
        lhs, rhs = modfunc.fricke_difference_sides(u.raw, v.raw, K)
        ok = eq_to_order(lhs, rhs, K)
        checks.append({"u": str(u), "v": str(v), "order": K, "status": "pass" if ok else "fail"})
    return {"identity": "fricke-difference", "level": N, "checks": checks}


def identity_delta_dual(args):
    K = args.order or 40
    ok = eq_to_order(modfunc.delta_norm(K), modfunc.delta_from_eisenstein(K), K)
    return {"identity": "delta-dual", "checks": [{"order": K, "status": "pass" if ok else "fail"}]}


def identity_g14_dual(args):
    K = args.order or 50
    a, b = modfunc.g14_product(K), modfunc.g14_ratio(K)
    ok = eq_to_order(a, b, K)
    lead = [str(a.coefficient(e).rational_value()) for e in (-1, 0, 1)]
    return {"identity": "g14-dual", "checks": [{"order": K, "leading": lead, "status": "pass" if ok else "fail"}]}


def identity_g41_dual(args):
    K = args.order or 40
    ok = eq_to_order(modfunc.g41(K), modfunc.g41_direct(K), K)
    return {"identity": "g41-dual", "checks": [{"order": K, "status": "pass" if ok else "fail"}]}


def identity_discriminant_weak(args):
    N = _level(args, 2)
    K = args.order or 15
    try:
        res = families.discriminant_check_weak(N, K)
    except families.NonConstantQuotient as exc:
        return {"identity": "discriminant-weak", "level": N, "checks": [{"status": "fail", "error": str(exc)}]}
    out = res.to_json()
    out["status"] = "pass"
    return {"identity": "discriminant-weak", "level": N, "checks": [out]}


def identity_vandermonde(args):
    N = _level(args, 8)
    K = args.order or 10
    rep = families.vandermonde_trace_check(N, K)
    return {"identity": "vandermonde", "level": N, "vectors": rep.vectors, "checks": rep.checks}


IDENTITIES = {
    "fricke-difference": identity_fricke_difference,
    "delta-dual": identity_delta_dual,
    "g14-dual": identity_g14_dual,
    "g41-dual": identity_g41_dual,
    "discriminant-weak": identity_discriminant_weak,
    "vandermonde": identity_vandermonde,
}


# ---------------------------------------------------------------------------
# commands


def _all_pass(checks) -> bool:
    return bool(checks) and all(c.get("status") == "pass" for c in checks)


def cmd_expand(args):
    if args.func not in FUNCTIONS:
        raise UsageError(f"unknown function {args.func!r}; choose from {', '.join(sorted(FUNCTIONS))}")
    K = args.order or 10
    s = FUNCTIONS[args.func](args, K)
    out = {"function": args.func, "series": s.to_json()}
    if args.v:
        out["v"] = args.v[0]
    return out, EXIT_PASS


def cmd_verify(args):
    if args.identity not in IDENTITIES:
        raise UsageError(f"unknown identity {args.identity!r}; choose from {', '.join(sorted(IDENTITIES))}")
    rep = IDENTITIES[args.identity](args)
    ok = _all_pass(rep["checks"])
    rep["status"] = "pass" if ok else "fail"
    return rep, EXIT_PASS if ok else EXIT_FAIL


def _load_json_arg(text):
    if text.startswith("@"):
        with open(text[1:]) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return None


def _spec_from_args(args):
    N = _level(args)
    raw = args.spec
    obj = _load_json_arg(raw)
    if obj is None:
        # Accept a bare polynomial, or {"poly":[...]} with unquoted entries.
        inner = raw
        if raw.strip().startswith("{") and "[" in raw:
            inner = raw[raw.index("[") + 1 : raw.rindex("]")]
            inner = "+".join(p for p in inner.split(",") if p.strip())
        spec = families.FamilySpec.parse(inner, N, args.kind)
    else:
        spec = families.FamilySpec.from_json(obj, level=N, kind=args.kind)
    if args.perturb:
        spec = spec.with_perturbation(Fraction(args.perturb))
    return spec


def cmd_family(args):
    K = args.order or 8
    if args.sub == "verify":
        if args.family:
            fam = families.family_for(args.family, _level(args))
        else:
            fam = families.RecipeFamily(_spec_from_args(args))
        taus = args.tau or ["2i"]
        f2 = families.verify_F2(fam, K)
        f3 = families.verify_F3(fam, K, tol=args.tol, taus=taus)
        ok = f2.passed and f3.passed
        out = {
            "family": fam.name,
            "level": fam.level,
            "order": K,
            "F2": f2.to_json(),
            "F3": f3.to_json(),
            "status": "pass" if ok else "fail",
        }
        return out, EXIT_PASS if ok else EXIT_FAIL
    obj = _load_json_arg(args.target)
    if obj is None:
        raise UsageError("--target must be series JSON or @file")
    target = QExp.from_json(obj.get("series", obj))
    N = _level(args)
    try:
        spec = families.express_in_generators(target, N, args.max_degree, args.kind)
    except NoSolution as exc:
        return {"status": "fail", "error": str(exc)}, EXIT_FAIL
    return {"status": "pass", "spec": spec.to_json(), "recipe": str(spec)}, EXIT_PASS


def cmd_eval(args):
    if args.func not in FUNCTIONS:
        raise UsageError(f"unknown function {args.func!r}")
    tau = numeric.CPoint.of(args.tau)
    val, err = _eval_function(args.func, args, tau)
    return {
        "function": args.func,
        "tau": [tau.re, tau.im],
        "value": [val.real, val.imag],
        "error_estimate": err,
    }, EXIT_PASS


def _parse_matrix(text, N):
    parts = [int(p) for p in text.replace(" ", "").split(",")]
    if len(parts) != 4:
        raise UsageError("matrix must be 'a,b,c,d'")
    return galois.GLMat(N, *parts)


def cmd_act(args):
    N = _level(args)
    g = _parse_matrix(args.matrix, N)
    d, beta = galois.decompose(g)
    out = {"matrix": list(g.entries), "level": N, "det": d, "beta": list(beta.entries)}
    if args.v:
        v = FracVec.parse(args.v[0])
        out["v"] = str(v)
        out["image"] = str(galois.act_vec(g, v))
    return out, EXIT_PASS


# ---------------------------------------------------------------------------
# output


def _table(obj, prefix="") -> list[str]:
    rows = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows += _table(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, x in enumerate(obj):
            rows += _table(x, f"{prefix}{i}.")
    else:
        rows.append(f"{prefix[:-1]:<40} {obj}")
    return rows


def render(obj, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table(obj)) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int)
    common.add_argument("--order", type=int, help="certified exponent bound K")
    common.add_argument("--tol", type=float, default=1e-8)
    common.add_argument("--v", action="append", help="vector 'a/N,b/N' (repeatable)")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="fricke", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="print a q-expansion")
    e.add_argument("func")
    e.set_defaults(run=cmd_expand)

    v = sub.add_parser("verify", parents=[common], help="check a named identity")
    v.add_argument("identity")
    v.add_argument("--pairs", type=int, default=5)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(run=cmd_verify)

    f = sub.add_parser("family", help="verify a family or solve for a recipe")
    fsub = f.add_subparsers(dest="sub", required=True)
    fv = fsub.add_parser("verify", parents=[common])
    fv.add_argument("--spec", default="w", help="FamilySpec JSON, @file, or polynomial in x,y,z,w")
    fv.add_argument("--family", choices=("fricke-functions", "siegel-12N"))
    fv.add_argument("--kind", choices=families.KINDS)
    fv.add_argument("--perturb", help="negative control: add this rational to one coefficient off the base vector")
    fv.add_argument("--tau", action="append")
    fv.set_defaults(run=cmd_family)
    fe = fsub.add_parser("express", parents=[common])
    fe.add_argument("--target", required=True, help="series JSON or @file")
    fe.add_argument("--max-degree", type=int, default=4)
    fe.add_argument("--kind", choices=families.KINDS)
    fe.set_defaults(run=cmd_family)

    ev = sub.add_parser("eval", parents=[common], help="evaluate a function at tau")
    ev.add_argument("--func", required=True)
    ev.add_argument("--tau", required=True)
    ev.set_defaults(run=cmd_eval)

    a = sub.add_parser("act", parents=[common], help="apply a GL2(Z/N) matrix to a vector")
    a.add_argument("--matrix", required=True)
    a.set_defaults(run=cmd_act)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if getattr(args, "order", None) is not None and args.order < 1:
        print("error: --order must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "tol", 1.0) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        out, code = args.run(args)
    except (UsageError, FrickeError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(out, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

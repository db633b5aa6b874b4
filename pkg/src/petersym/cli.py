"""Command-line front end; every subcommand prints a JSON document.

Exit codes: 2 for usage errors, 3 for violated mathematical
preconditions (odd weight with -Id, weight-2 data not vanishing at the
origin, ...), 4 for numeric verification failures.  Output is
deterministic: cosets in discovery order, arcs in symbol order, basis
vectors in echelon order.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dims import dim_cusp_forms_gamma0
from .eisenstein import EisSymbol, TorsionFunction
from .exact import frac_str, parse_frac
from .farey import (
    base_symbol_sl2z,
    gamma0_group,
    gamma1_group,
    gamma_full_group,
    subgroup_farey,
)
from .orbits import basis_v, orbit_indicator
from .pairing import (
    PairingContext,
    cuspidal_subspace,
    eisenstein_pairing_matrix,
    hecke_matrix,
    pair_hom,
)
from .spaces import modular_symbol_space

USAGE_ERROR = 2
MATH_ERROR = 3
PRECISION_ERROR = 4


class MathPreconditionError(Exception):
    pass


def _group_spec(kind: str, level: int):
    if kind == "gamma0":
        return gamma0_group(level)
    if kind == "gamma1":
        return gamma1_group(level)
    if kind == "gamma":
        return gamma_full_group(level)
    raise MathPreconditionError(f"unknown group kind {kind!r}")


def _symbol(kind: str, level: int, parent=None):
    if level < 1:
        raise MathPreconditionError("level must be positive")
    if parent is None:
        parent = base_symbol_sl2z()
    if kind == "gamma0" and level == 1:
        return parent
    sym, _ = subgroup_farey(parent, _group_spec(kind, level))
    return sym


def _space(args):
    if args.weight < 2:
        raise MathPreconditionError("weight must be at least 2")
    sym = _symbol(args.group, args.level)
    if args.weight % 2 and sym.member((-1, 0, 0, -1)):
        raise MathPreconditionError(
            "odd weight with -Id in the group: the space is zero"
        )
    return sym, modular_symbol_space(sym, args.weight)


def cmd_farey(args):
    parent = None
    if args.parent:
        with open(args.parent) as fh:
            pdata = json.load(fh)
        parent = _symbol(pdata["group"], pdata["level"])
    sym = _symbol(args.group, args.level, parent)
    data = sym.to_json()
    data["invariants"] = sym.invariants()
    return data


def cmd_modsym_space(args):
    sym, space = _space(args)
    return {
        "level": args.level,
        "weight": args.weight,
        "dimension": space.dimension(),
        "cosets": len(sym.require_direct_table().reps),
        "basis": [
            [[frac_str(c) for c in v.coeffs] for v in b.values]
            for b in space.basis
        ],
    }


def cmd_eisbasis(args):
    if args.weight < 2:
        raise MathPreconditionError("weight must be at least 2")
    triples = basis_v(args.level, args.weight)
    return {
        "level": args.level,
        "weight": args.weight,
        "triples": [list(t) for t in triples],
        "indicators": [orbit_indicator(t, args.level).to_json() for t in triples],
    }


def _load_fn(path: str) -> TorsionFunction:
    with open(path) as fh:
        data = json.load(fh)
    return TorsionFunction(
        data["N"], [[parse_frac(v) for v in row] for row in data["values"]]
    )


def cmd_eis_symbol(args):
    f = _load_fn(args.fn)
    if f.n != args.level:
        raise MathPreconditionError("function level does not match --level")
    try:
        sym = EisSymbol(f, args.weight)
        data = {
            "level": args.level,
            "weight": args.weight,
            "base_value": sym.p_mod.to_json(),
            "infinity_moment": frac_str(sym.c_inf),
        }
    except ValueError as exc:
        raise MathPreconditionError(str(exc))
    return data


def cmd_pairing_matrix(args):
    sym, space = _space(args)
    if args.eisenstein:
        rows = eisenstein_pairing_matrix(sym, args.level, args.weight, space)
    else:
        ctx = PairingContext(sym, args.weight)
        rows = [
            [pair_hom(ctx, b1, b2) for b2 in space.basis] for b1 in space.basis
        ]
    return {
        "level": args.level,
        "weight": args.weight,
        "rows": len(rows),
        "cols": space.dimension(),
        "matrix": [[frac_str(v) for v in row] for row in rows],
    }


def cmd_hecke(args):
    sym, space = _space(args)
    if args.group != "gamma0":
        raise MathPreconditionError("Hecke matrices are wired for the gamma0 family")
    mat = hecke_matrix(space, args.ell)
    return {
        "level": args.level,
        "weight": args.weight,
        "ell": args.ell,
        "matrix": [[frac_str(v) for v in row] for row in mat],
    }


def cmd_cuspidal(args):
    if args.weight % 2:
        raise MathPreconditionError("cuspidal extraction needs even weight")
    space, basis = cuspidal_subspace(args.level, args.weight)
    return {
        "level": args.level,
        "weight": args.weight,
        "dimension": len(basis),
        "expected": 2 * dim_cusp_forms_gamma0(args.level, args.weight),
        "basis": [
            [[frac_str(c) for c in v.coeffs] for v in b.values] for b in basis
        ],
    }


def cmd_qexp(args):
    from .qexp import eis_qexp

    f = _load_fn(args.fn)
    if f.n != args.level:
        raise MathPreconditionError("function level does not match --level")
    if args.weight < 2:
        raise MathPreconditionError("weight must be at least 2")
    q = eis_qexp(f, args.weight, args.terms)
    return {
        "level": args.level,
        "weight": args.weight,
        "terms": args.terms,
        "constant": [frac_str(c) for c in q.constant.coeffs],
        "coefficients": [
            [frac_str(c) for c in q.coefficient(t).coeffs]
            for t in range(1, args.terms + 1)
        ],
    }


def cmd_verify(args):
    from math import comb

    from .pairing import lambda_coeffs
    from .qexp import (
        delta_periods,
        l_special,
        l_special_numeric,
        mellin_numeric,
        mellin_rational,
        period_haberland,
        petersson_norm_delta,
    )

    report = {"suite": args.suite, "checks": []}
    ok = True

    def record(name, residual, tol):
        nonlocal ok
        passed = residual < tol
        ok = ok and passed
        report["checks"].append({
            "name": name, "residual": residual, "tolerance": tol,
            "status": "pass" if passed else "fail",
        })

    if args.suite == "mellin":
        for n in (3, 4, 5):
            for k in (4, 6):
                f = TorsionFunction.indicator(n, (1, 0)) \
                    + TorsionFunction.indicator(n, (1, 2)).scale(Fraction(1, 2))
                for j in range(1, k - 2):
                    exact = complex(float(mellin_rational(f, k, j)))
                    numeric = mellin_numeric(f, k, j)
                    rel = abs(numeric - exact) / max(1.0, abs(exact))
                    record(f"mellin N={n} k={k} j={j} (relative)", rel, 1e-8)
        for n in range(1, 7):
            for h in (2, 3, 4):
                g = [Fraction((a * a + h) % n - n // 2, 1 + (a % 3)) for a in range(n)]
                exact = float(l_special(g, h))
                numeric = l_special_numeric([float(x) for x in g], h)
                record(f"l-value N={n} h={h} (absolute)", abs(numeric - exact), 1e-10)
    elif args.suite == "delta":
        r = delta_periods()
        scale = max(abs(x) for x in r)
        odd = abs(sum(comb(10, m) * r[m] for m in range(1, 11, 2))) / scale
        record("odd binomial relation (relative)", odd, 1e-8)
        lam = [float(x) for x in lambda_coeffs(12)]
        even = abs(sum(l * r[m] for l, m in zip(lam, range(0, 11, 2)))) / scale
        record("even coefficient relation (relative)", even, 1e-8)
    elif args.suite == "petersson":
        r = delta_periods()
        scale = max(abs(x) for x in r)
        norm = petersson_norm_delta()
        hab = period_haberland(r, [x.conjugate() for x in r])
        target = -(2j) ** 11 * norm
        record("pairing vs quadrature norm (relative)",
               abs(hab - target) / abs(target), 1e-6)
        record("self pairing (absolute, normalized)",
               abs(period_haberland(r, r)) / scale ** 2, 1e-8)
    else:
        raise MathPreconditionError(f"unknown suite {args.suite!r}")

    report["status"] = "pass" if ok else "fail"
    return report, (0 if ok else PRECISION_ERROR)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petersym",
        description="Exact modular symbols, Farey symbols and the algebraic pairing",
    )
    parser.add_argument("--output", help="write the JSON result to this file")
    parser.add_argument("--format", choices=["json"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weight=True, group=True):
        p.add_argument("--level", type=int, required=True)
        if weight:
            p.add_argument("--weight", type=int, required=True)
        if group:
            p.add_argument("--group", choices=["gamma0", "gamma1", "gamma"],
                           default="gamma0")

    p = sub.add_parser("farey", help="Farey symbol of a congruence subgroup")
    common(p, weight=False)
    p.add_argument("--parent", help="JSON file {group, level} to build through")
    p.set_defaults(func=cmd_farey)

    p = sub.add_parser("modsym-space", help="basis of the symbol space")
    common(p)
    p.set_defaults(func=cmd_modsym_space)

    p = sub.add_parser("eisbasis", help="basis orbits and indicator functions")
    common(p, group=False)
    p.set_defaults(func=cmd_eisbasis)

    p = sub.add_parser("eis-symbol", help="period data of a torsion function")
    common(p, group=False)
    p.add_argument("--fn", required=True, help="TorsionFunction JSON file")
    p.set_defaults(func=cmd_eis_symbol)

    p = sub.add_parser("pairing-matrix", help="pairing matrix on the basis")
    common(p)
    p.add_argument("--eisenstein", action="store_true",
                   help="rows over basis Eisenstein symbols instead")
    p.set_defaults(func=cmd_pairing_matrix)

    p = sub.add_parser("hecke", help="Hecke operator matrix")
    common(p)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_hecke)

    p = sub.add_parser("cuspidal", help="cuspidal subspace basis")
    common(p, group=False)
    p.set_defaults(func=cmd_cuspidal)

    p = sub.add_parser("qexp", help="q-expansion of the weight-k series")
    common(p, group=False)
    p.add_argument("--terms", type=int, default=10)
    p.add_argument("--fn", required=True, help="TorsionFunction JSON file")
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("verify", help="numeric verification suites")
    p.add_argument("--suite", choices=["mellin", "delta", "petersson"],
                   required=True)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except MathPreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MATH_ERROR
    code = 0
    if isinstance(result, tuple):
        result, code = result
    text = json.dumps(result, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

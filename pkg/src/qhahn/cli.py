"""``qhahn`` command line: coefficient tables, verification, classification,
polynomials and q-reversal, with exact text output and opt-in decimals.

Exit status: 0 ok / verified, 1 a mathematical check failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import coeffs as C
from . import families as F
from . import qmatrix as Q
from .errors import QHahnError
from .exactfield import QuadElement, format_scalar, parse_scalar
from .ratfunc import Poly, format_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- parsing -----------------------------------------------------------------

def _scalar(text, adjoin):
    return parse_scalar(text, adjoin=adjoin)


def _d_list(text, adjoin):
    parts = [s for s in text.split(",")]
    if len(parts) != 3:
        raise UsageError("--d takes three comma-separated values")
    return tuple(C.INF if s.strip().lower() == "inf" else _scalar(s, adjoin) for s in parts)


def params_from_args(args) -> C.ParamSet:
    auto = isinstance(args.adjoin, str) and args.adjoin.lower() == "auto"
    adjoin = None if (args.adjoin is None or auto) else Fraction(args.adjoin)
    extra = dict(
        branch=args.branch,
        sigma0_sign=args.sign,
        adjoin=adjoin,
        mode=args.mode,
    )
    if args.sigma0 is not None:
        extra["sigma0_override"] = _scalar(args.sigma0, adjoin)
    if args.variant is not None:
        extra["variant"] = args.variant
    alpha1 = _scalar(args.alpha1, adjoin) if args.alpha1 is not None else None
    if args.preset:
        if args.q is None:
            raise UsageError("--preset needs --q")
        d = _d_list(args.d, adjoin) if args.d else None
        p = F.preset(args.preset, _scalar(args.q, adjoin), 1 if alpha1 is None else alpha1, d=d, **extra)
    else:
        missing = [f for f in ("q", "y", "d", "alpha1") if getattr(args, f) is None]
        if missing:
            raise UsageError("missing " + ", ".join("--" + m for m in missing) + " (or use --preset)")
        p = C.ParamSet(
            q=_scalar(args.q, adjoin), y=_scalar(args.y, adjoin), d=_d_list(args.d, adjoin),
            alpha1=alpha1, **extra,
        )
        if args.variant is None and not _defined(p):
            # the starred forms stay finite where the standard ones hit Z(q) = 0
            alt = C.q_reverse(p)
            if _defined(alt):
                p = alt
    return C.with_root_field(p) if (auto or args.adjoin is None) else p


def _defined(p) -> bool:
    try:
        C.t_value(p)
        C.sigma0_sq(p)
    except QHahnError:
        return False
    return True


# -- rendering ---------------------------------------------------------------

def decimal_text(x, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        if isinstance(x, QuadElement):
            a, b, s = (Decimal(v.numerator) / Decimal(v.denominator) for v in (x.a, x.b, x.s))
            if s >= 0:
                return _round(a + b * s.sqrt(), digits)
            im = b * (-s).sqrt()
            sign = "+" if im >= 0 else "-"
            return f"{_round(a, digits)}{sign}{_round(abs(im), digits)}i"
        f = Fraction(x)
        return _round(Decimal(f.numerator) / Decimal(f.denominator), digits)


def _round(d: Decimal, digits: int) -> str:
    return f"{d:.{digits}f}"


def emit(header: dict, rows: list, fmt: str, out) -> None:
    if fmt == "json":
        json.dump({"header": header, "rows": rows}, out, indent=2)
        out.write("\n")
        return
    cols = list(rows[0].keys()) if rows else []
    if fmt == "csv":
        for k, v in header.items():
            out.write(f"# {k}={v}\n")
        w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return
    for k, v in header.items():
        out.write(f"{k}: {v}\n")
    if not rows:
        return
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    out.write("  ".join(c.rjust(widths[c]) for c in cols) + "\n")
    for r in rows:
        out.write("  ".join(str(r[c]).rjust(widths[c]) for c in cols) + "\n")


def _fmt(x):
    return format_scalar(x)


def _param_header(p: C.ParamSet) -> dict:
    h = {
        "q": _fmt(p.q),
        "y": _fmt(p.y),
        "d": ",".join(str(x) if x is C.INF else _fmt(x) for x in p.d),
        "alpha1": _fmt(p.alpha1),
        "branch": p.branch,
        "variant": p.variant,
        "sign": p.sigma0_sign,
    }
    if p.adjoin is not None:
        h["adjoin"] = _fmt(p.adjoin)
    return h


def _table_header(table, args) -> dict:
    h = _param_header(table.params)
    h["sigma0_sq"] = _fmt(table.sigma0_sq)
    h["t"] = _fmt(table.t)
    h["degree_pair"] = f"({table.degree_pair[0]},{table.degree_pair[1]})"
    h["sigma_identically_zero"] = table.flags["sigma_identically_zero"]
    h["finite_family_at"] = table.flags["finite_family_at"]
    if getattr(args, "show_zv", False):
        p = table.params
        z, v = C.build_Z(p), C.build_V(p)
        # over F(v) (an infinite d_j) only the factored form is cheap
        h["Z"] = z.factored_str() if p.deformed else str(z)
        h["V"] = v.factored_str() if p.deformed else str(v)
    return h


def _coeff_rows(table, digits):
    rows = []
    for k in range(table.kmax + 1):
        raw = {
            "alpha": table.alpha[k - 1] if k >= 1 else None,
            "beta": table.beta[k],
            "sigma": table.sigma[k],
        }
        row = {"k": k, "alpha": "" if k == 0 else _fmt(raw["alpha"]), "beta": _fmt(raw["beta"]), "sigma": _fmt(raw["sigma"])}
        if digits is not None:
            row["alpha_decimal"] = "" if k == 0 else decimal_text(raw["alpha"], digits)
            row["beta_decimal"] = decimal_text(raw["beta"], digits)
            row["sigma_decimal"] = decimal_text(raw["sigma"], digits)
        rows.append(row)
    return rows


# -- commands ----------------------------------------------------------------

def cmd_coeffs(args, out) -> int:
    p = params_from_args(args)
    table = C.build_table(p, args.kmax)
    emit(_table_header(table, args), _coeff_rows(table, args.decimals), args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    p = params_from_args(args)
    N = args.order
    t = _scalar(args.t_override, p.adjoin) if args.t_override is not None else None
    R = Q.verify_quadratic(p, N, t=t)
    table = C.build_table(p, N + Q.SLACK + 2)
    checks = []
    bad = R.first_nonzero()
    checks.append({
        "check": "quadratic residual",
        "order": N,
        "result": "0" if bad is None else "nonzero",
        "first_offending": "" if bad is None else f"({bad[0]},{bad[1]}) = {_fmt(bad[2])}",
    })
    kg = min(8, table.kmax)
    g = Q.gram_check(table, kg)
    checks.append({
        "check": "gram",
        "order": kg,
        "result": "diagonal" if g.ok else "not diagonal",
        "first_offending": "" if g.ok else f"({g.failure[0]},{g.failure[1]}) = {_fmt(g.failure[2])}, expected {_fmt(g.failure[3])}",
    })
    ok = bad is None and g.ok
    if table.t == 0 and t is None:
        h = Q.hahn_transform_check(table, p.q, min(N, table.kmax - Q.SLACK - 1))
        fb = h.first_nonzero
        checks.append({
            "check": "hahn transform",
            "order": h.residual.N,
            "result": "0" if h.zero else "nonzero",
            "first_offending": "" if fb is None else f"({fb[0]},{fb[1]}) = {_fmt(fb[2])}",
        })
        ok = ok and h.zero
    header = _param_header(p)
    header["t"] = _fmt(table.t if t is None else t)
    header["status"] = "verified" if ok else "failed"
    emit(header, checks, args.format, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args, out) -> int:
    p = params_from_args(args)
    deg, match, new = F.family_match(p)
    pair = f"({deg[0]},{deg[1]})"
    if match:
        note = f"matches {match}"
    elif new:
        note = "not in catalog, possibly new"
    else:
        note = "not in catalog"
    if args.format == "table":
        out.write(f"{pair}, {note}\n")
    else:
        emit(_param_header(p), [{"degree_pair": pair, "match": match or "", "possibly_new": new}], args.format, out)
    return EXIT_OK


def cmd_poly(args, out) -> int:
    p = params_from_args(args)
    if args.kmax < 1:
        raise UsageError("--kmax must be >= 1")
    table = C.build_table(p, args.kmax)
    seq = Q.recurrence_polys(table.alpha, table.beta, table.kmax)
    rows = []
    for k, c in enumerate(seq.rows):
        poly = Poly(c)
        if args.format == "json":
            rows.append({"k": k, "poly": format_poly(poly), "coeffs": [_fmt(x) for x in c]})
        else:
            rows.append({"k": k, "poly": format_poly(poly)})
    emit(_table_header(table, args), rows, args.format, out)
    return EXIT_OK


def cmd_reverse(args, out) -> int:
    p = params_from_args(args)
    r = C.with_root_field(C.q_reverse(p))
    ta, tb = C.build_table(p, args.kmax), C.build_table(r, args.kmax)
    n = min(ta.kmax, tb.kmax)
    rows = []
    for k in range(n + 1):
        a = ta.alpha[k - 1] if k else None
        b = tb.alpha[k - 1] if k else None
        rows.append({
            "k": k,
            "alpha": "" if k == 0 else _fmt(a),
            "alpha_rev": "" if k == 0 else _fmt(b),
            "alpha_equal": "" if k == 0 else a == b,
            "sigma": _fmt(ta.sigma[k]),
            "sigma_rev": _fmt(tb.sigma[k]),
        })
    header = _param_header(p)
    header["t"] = _fmt(ta.t)
    header["t_rev"] = _fmt(tb.t)
    header["sigma0_sq_rev"] = _fmt(tb.sigma0_sq)
    if r.adjoin is not None:
        header["adjoin_rev"] = _fmt(r.adjoin)
    header["alpha_invariant"] = all(ta.alpha[i] == tb.alpha[i] for i in range(n))
    emit(header, rows, args.format, out)
    return EXIT_OK


def cmd_families(args, out) -> int:
    rows = [{"name": s.name, "template": s.template, "tag": s.tag} for s in F.CATALOG.values()]
    emit({}, rows, args.format, out)
    return EXIT_OK


# -- argument parser ---------------------------------------------------------

def _add_param_flags(sp):
    sp.add_argument("--preset", choices=sorted(F.CATALOG))
    sp.add_argument("--q")
    sp.add_argument("--y")
    sp.add_argument("--d", help="d1,d2,d3 (inf allowed for a d_j)")
    sp.add_argument("--alpha1")
    sp.add_argument("--branch", choices=("A", "B"), default="A")
    sp.add_argument("--variant", choices=("standard", "starred"))
    sp.add_argument("--sign", choices=("plus", "minus"), default="plus")
    sp.add_argument("--sigma0", help="explicit sigma0 (overrides the square root)")
    sp.add_argument("--adjoin", help="radicand s for rt = sqrt(s); default: adjoin sqrt(sigma0^2) only when needed")
    sp.add_argument("--mode", choices=("strict", "permissive"), default=os.environ.get("QHAHN_MODE", "strict"))
    sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sp.add_argument("--decimals", type=int)
    sp.add_argument("--kmax", type=int, default=10)
    sp.add_argument("--show-zv", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhahn", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("coeffs", "verify", "classify", "poly", "reverse"):
        sp = sub.add_parser(name)
        _add_param_flags(sp)
        if name == "verify":
            sp.add_argument("--order", type=int, default=16)
            sp.add_argument("--t-override")
    fp = sub.add_parser("families")
    fp.add_argument("--list", action="store_true", default=True)
    fp.add_argument("--format", choices=("table", "json", "csv"), default="table")
    return ap


COMMANDS = {
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "poly": cmd_poly,
    "reverse": cmd_reverse,
    "families": cmd_families,
}


_VALUE_FLAGS = {"--q", "--y", "--d", "--alpha1", "--sigma0", "--adjoin", "--t-override"}


def _glue_negative(argv):
    """Let values such as ``--d -1,2,-2`` through argparse as ``--d=-1,2,-2``."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] not in _VALUE_FLAGS:
            nxt = argv[i + 1]
            if len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] in "/r"):
                out.append(f"{a}={nxt}")
                i += 2
                continue
        out.append(a)
        i += 1
    return out


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    if os.environ.get("QHAHN_MODE", "strict") not in ("strict", "permissive"):
        print("error: QHAHN_MODE must be strict or permissive", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, QHahnError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout (for tests and scripting)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    bcpolar invert  PROBLEM.json     compute an inverse and its idempotents
    bcpolar verify  PROBLEM.json     check a polarity or equivalence claim
    bcpolar suite   [flags]          run the property suite

A problem file (``-`` reads stdin) looks like::

    {"operation": "bc-inverse",
     "matrices": {"a": M, "b": M, "c": M},
     "options": {"field": "Q"}}

where each ``M`` is either a matrix object ``{"field", "rows", "cols",
"entries"}`` or a bare list of rows, read in ``options.field`` (default
``Q``).  Entries are integers or strings such as ``"-3/4"``.

Exit status: 0 computed or verified, 1 not invertible or not verified,
2 bad input, 3 suite failures or a starved instance family.
"""

import argparse
import json
import re
import sys

from . import bc, classic
from .field import FieldMismatchError, parse_field
from .linmem import in_double_commutant
from .matrix import DimensionError, Mat, two_sided_inverse
from .subspace import cor43_check, thm41_check
from .suite import run_suite

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_SUITE = 0, 1, 2, 3

INVERT_OPS = ("bc-inverse", "dual-bc-polar", "inverse-along", "drazin", "group-inverse", "moore-penrose", "bott-duffin")
VERIFY_OPS = ("bc-polar", "polar", "polar-along", "thm41", "cor43", "perturbation")

_REQUIRED = {
    "bc-inverse": "abc",
    "dual-bc-polar": "abc",
    "inverse-along": "a",
    "drazin": "a",
    "group-inverse": "a",
    "moore-penrose": "a",
    "bott-duffin": "abc",
    "bc-polar": "abcpq",
    "polar": "ap",
    "polar-along": "adp",
    "thm41": "abc",
    "cor43": "ab",
    "perturbation": "abcd",
}


class InputError(ValueError):
    pass


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def parse_problem(obj, allowed):
    """Validate a problem object; returns ``(operation, matrices, options)``."""
    if not isinstance(obj, dict):
        raise InputError("problem file must hold a JSON object")
    op = obj.get("operation")
    if op not in allowed:
        raise InputError(f"operation must be one of {', '.join(allowed)}; got {op!r}")
    options = obj.get("options", {}) or {}
    if not isinstance(options, dict):
        raise InputError("options must be an object")
    try:
        default_field = parse_field(options.get("field", "Q"))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None
    raw = obj.get("matrices")
    if not isinstance(raw, dict):
        raise InputError("matrices must be an object keyed by name")
    mats = {}
    for name, m in raw.items():
        if name not in "abcdpq" or len(name) != 1:
            raise InputError(f"unknown matrix name {name!r}")
        try:
            mats[name] = Mat.from_json(m) if isinstance(m, dict) else Mat(m, default_field)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"matrix {name}: {exc}") from None
    missing = [n for n in _REQUIRED[op] if n not in mats]
    if op == "inverse-along" and "d" not in mats and "k" not in options:
        missing.append("d (or options.k)")
    if missing:
        raise InputError(f"{op} needs matrices {', '.join(missing)}")
    first = next(iter(mats.values()))
    for name, m in mats.items():
        if m.field != first.field:
            raise InputError(f"matrix {name} is over {m.field!r}, expected {first.field!r}")
        if not m.is_square or m.shape != first.shape:
            raise InputError(f"matrix {name} has shape {m.shape}; all must be square of one size")
    if "k" in options and (not isinstance(options["k"], int) or options["k"] < 0):
        raise InputError("options.k must be a non-negative integer")
    return op, mats, options


def _block(checks):
    return [{"identity": label, "holds": bool(ok)} for label, ok in checks]


def _mats(**kw):
    return {k: v.tolist() for k, v in kw.items()}


def _polar_checks(a, p):
    return [
        ("p^2=p", p.is_idempotent()),
        ("p in comm(comm(a))", in_double_commutant(p, a)),
        ("a+p invertible", two_sided_inverse(a + p) is not None),
        ("ap nilpotent", classic.is_nilpotent(a @ p)),
    ]


def cmd_invert(obj):
    """Returns ``(report, exit_code)`` for an invert problem."""
    op, m, options = parse_problem(obj, INVERT_OPS)
    a = m["a"]
    report = {"operation": op, "field": a.field.descriptor(), "n": a.rows}

    if op in ("bc-inverse", "bott-duffin", "inverse-along"):
        if op == "inverse-along":
            b = c = m["d"] if "d" in m else a ** options["k"]
        else:
            b, c = m["b"], m["c"]
        if op == "bott-duffin":
            try:
                res = bc.bott_duffin(a, b, c)
            except ValueError as exc:
                raise InputError(str(exc)) from None
        else:
            res = bc.bc_inverse(a, b, c)
        if res is None:
            report["outcome"] = "not invertible along d" if op == "inverse-along" else "not (b,c)-invertible"
            return report, EXIT_NO
        checks = bc.bc_inverse_checks(a, b, c, res.y, res.p, res.q)
        if op == "inverse-along":
            checks += bc.polar_along_conditions(a, b, res.p)
            checks += bc.dual_polar_along_conditions(a, b, res.q)
        report["outcome"] = "invertible"
        report["result"] = _mats(y=res.y, p=res.p, q=res.q)
    elif op == "dual-bc-polar":
        res = bc.dual_bc_polar(a, m["b"], m["c"])
        if res is None:
            report["outcome"] = "not dually (b,c)-polar"
            return report, EXIT_NO
        checks = bc.dual_bc_polar_conditions(a, m["b"], m["c"], res.r, res.s)
        report["outcome"] = "dually polar"
        report["result"] = _mats(y=res.y, r=res.r, s=res.s)
    elif op == "drazin":
        res = classic.drazin(a)
        x, k = res.d_inverse, res.index
        ak = a**k
        checks = [
            ("ax=xa", a @ x == x @ a),
            ("xax=x", x @ a @ x == x),
            ("a^(k+1)x=a^k", ak @ a @ x == ak),
        ]
        checks += [(lbl.replace("p", "a^pi"), ok) for lbl, ok in _polar_checks(a, res.spectral_idempotent)]
        report["outcome"] = "invertible"
        report["result"] = {"d_inverse": x.tolist(), "index": k, "spectral_idempotent": res.spectral_idempotent.tolist()}
    elif op == "group-inverse":
        x = classic.group_inverse(a)
        if x is None:
            report["outcome"] = "not group invertible"
            return report, EXIT_NO
        checks = [("axa=a", a @ x @ a == a), ("xax=x", x @ a @ x == x), ("ax=xa", a @ x == x @ a)]
        report["outcome"] = "invertible"
        report["result"] = _mats(x=x)
    else:  # moore-penrose
        if a.field.characteristic:
            raise InputError("moore-penrose needs field Q")
        x = classic.moore_penrose(a)
        ax, xa = a @ x, x @ a
        checks = [
            ("axa=a", ax @ a == a),
            ("xax=x", xa @ x == x),
            ("(ax)^T=ax", ax.T == ax),
            ("(xa)^T=xa", xa.T == xa),
        ]
        report["outcome"] = "invertible"
        report["result"] = _mats(x=x)

    report["verification"] = _block(checks)
    return report, EXIT_OK


def cmd_verify(obj):
    """Returns ``(report, exit_code)`` for a verify problem."""
    op, m, _ = parse_problem(obj, VERIFY_OPS)
    a = m["a"]
    report = {"operation": op, "field": a.field.descriptor(), "n": a.rows}

    if op == "bc-polar":
        checks = bc.bc_polar_conditions(a, m["b"], m["c"], m["p"], m["q"])
        verified = all(ok for _, ok in checks)
    elif op == "polar":
        checks = _polar_checks(a, m["p"])
        verified = all(ok for _, ok in checks)
    elif op == "polar-along":
        checks = bc.polar_along_conditions(a, m["d"], m["p"])
        verified = all(ok for _, ok in checks)
    elif op == "thm41":
        v = thm41_check(a, m["b"], m["c"])
        checks = [
            ("N(B)=N(CAB) and R(C)=R(CAB)", v.invertible),
            ("(B,C)-polar", v.polar),
            ("R(B)+N(CA) and R(AB)+N(C) direct and full", v.projectors_exist),
        ]
        verified = len({ok for _, ok in checks}) == 1
        if v.P is not None and v.Q is not None:
            report["projectors"] = _mats(P=v.P.matrix, Q=v.Q.matrix)
    elif op == "cor43":
        labels = ("invertible along B", "polar along B", "projectors onto R(B) along N(BA), onto R(AB) along N(B)",
                  "R(AB)+N(B) direct and full, A: R(B)->R(AB) invertible")
        checks = list(zip(labels, cor43_check(a, m["b"])))
        verified = len({ok for _, ok in checks}) == 1
    else:  # perturbation
        try:
            verdicts = bc.perturbation_equiv(a, m["d"], m["b"], m["c"])
        except ValueError as exc:
            report["outcome"] = f"precondition failed: {exc}"
            return report, EXIT_NO
        labels = ("d polar, same idempotents", "six identities", "intersected memberships", "d polar, cdp=cd, qdb=db")
        checks = list(zip(labels, verdicts))
        verified = len({ok for _, ok in checks}) == 1

    report["outcome"] = "verified" if verified else "not verified"
    report["verification"] = _block(checks)
    return report, EXIT_OK if verified else EXIT_NO


def cmd_suite(seed, field, max_dim, trials, exhaustive=False, timing=True):
    """Returns ``(document, exit_code)``; the ``report`` member is reproducible."""
    rep = run_suite(seed, field, max_dim, trials, exhaustive=exhaustive)
    doc = {"report": rep.to_json()}
    if timing:
        doc["timing"] = {"wall_time_s": round(rep.wall_time, 3)}
    return doc, EXIT_OK if rep.ok else EXIT_SUITE


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _field_flag(text):
    try:
        return parse_field(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="bcpolar", description="Exact (b,c)-inverses, polarity checks and the property suite.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in (("invert", "compute an inverse from a problem file"),
                        ("verify", "check a claim from a problem file")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("problem", help="problem JSON file, or - for stdin")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")

    s = sub.add_parser("suite", help="run the randomized or exhaustive property suite")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--field", type=_field_flag, default="Fp:7", help="Q or Fp:<p> (default Fp:7)")
    s.add_argument("--max-dim", type=_positive, default=4)
    s.add_argument("--trials", type=_positive, default=200)
    s.add_argument("--exhaustive-f2", action="store_true", help="enumerate every 2x2 triple over GF(2)")
    s.add_argument("--no-timing", action="store_true", help="omit wall time from the output")
    s.add_argument("-o", "--output", help="write JSON here instead of stdout")
    return parser


# JSON strings never hold raw newlines, so this only matches list syntax
_FLAT_LIST = re.compile(r"\[\n((?: +[^\n\[\]{}]*\n)+?) *\]")


def dumps(doc):
    """Indented JSON with innermost lists (matrix rows) kept on one line."""
    text = json.dumps(doc, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + " ".join(x.strip() for x in m.group(1).splitlines()) + "]", text) + "\n"


def _emit(doc, path):
    text = dumps(doc)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "suite":
            doc, code = cmd_suite(args.seed, args.field, args.max_dim, args.trials,
                                  exhaustive=args.exhaustive_f2, timing=not args.no_timing)
        else:
            handler = cmd_invert if args.command == "invert" else cmd_verify
            doc, code = handler(_load(args.problem))
    except (InputError, DimensionError, FieldMismatchError) as exc:
        print(f"bcpolar: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 enumeration budget exceeded,
4 internal consistency failure (or a failing verification suite).
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import errors
from .coeffring import IntPoly, MotivicScalar, QScalar, evaluate, gaussian_multinomial, parabolic_order
from .errors import BudgetExceeded, ConsistencyError, HallError, ValidationError

SUITE_NAMES = ("2segal", "assoc", "integration", "recursion", "periodic", "characters", "hecke")
VERBS = ("euler", "enumerate", "hall-product", "integrate", "motivic", "hn-type", "hn-filtration",
         "semistable", "flag", "period-domain", "equivariant", "hecke", "verify")


class UsageError(ValidationError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---- input helpers --------------------------------------------------------


def _load_json(arg, what):
    """``arg`` is a path to a JSON file or an inline JSON string."""
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise ValidationError(f"{what}: cannot read {arg!r} ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _quiver(arg):
    from .protoexact import quiver as qv
    from .verify import QUIVERS

    if arg is None:
        raise ValidationError("--quiver is required")
    if arg.lower() in QUIVERS:
        return QUIVERS[arg.lower()]()
    return qv.Quiver.from_json(_load_json(arg, "--quiver"))


def _ints(arg, what):
    if arg is None:
        raise ValidationError(f"{what} is required")
    try:
        return tuple(int(x) for x in arg.split(",") if x.strip() != "")
    except ValueError as exc:
        raise ValidationError(f"{what}: expected comma-separated integers, got {arg!r}") from exc


def _fracs(arg, what):
    try:
        return tuple(Fraction(x) for x in arg.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{what}: expected comma-separated rationals, got {arg!r}") from exc


def _stability(args, n):
    from .slope import StabilityData

    if getattr(args, "stability", None):
        s = StabilityData.from_json(_load_json(args.stability, "--stability"))
    elif getattr(args, "theta", None):
        rank = _ints(args.rank, "--rank") if args.rank else None
        s = StabilityData(_ints(args.theta, "--theta"), rank)
    else:
        raise ValidationError("give --theta (and optionally --rank) or --stability")
    if len(s.theta) != n:
        raise ValidationError(f"--theta: need {n} entries, one per vertex")
    return s


def _rep(quiver, arg, q=None):
    from .protoexact.quiver import QuiverRep

    data = _load_json(arg, "representation")
    if q is not None and "q" not in data:
        data = dict(data, q=q)
    return QuiverRep.from_json(quiver, data)


def _scalar_text(v, var="L"):
    if isinstance(v, (MotivicScalar, QScalar, IntPoly)):
        return v.format(var)
    return str(v)


def _table(rows, header):
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)] if rows else [len(h) for h in header]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))
    return "\n".join(lines)


# ---- verbs ----------------------------------------------------------------


def cmd_euler(args):
    from .hall import EulerFormSpec, euler_form

    Q = _quiver(args.quiver)
    x, y = _ints(args.x, "--x"), _ints(args.y, "--y")
    spec = EulerFormSpec(Q)
    psi = euler_form(spec, x, y)
    out = {"x": list(x), "y": list(y), "psi": psi, "chi_op": spec.chi_op(x, y)}
    return out, str(psi)


def cmd_enumerate(args):
    from .protoexact import quiver as qv

    Q = _quiver(args.quiver)
    alpha = _ints(args.dim, "--dim")
    table = qv.enumerate_reps(Q, alpha, args.q)
    out = {
        "quiver": Q.to_json(), "q": args.q, "dim": list(alpha),
        "classes": [{"rep": r.to_json(), "aut": a} for r, a in zip(table.representatives, table.aut_orders)],
        "groupoid_cardinality": str(table.groupoid_cardinality()),
    }
    rows = [(i, json.dumps(r.to_json()["mats"]), a) for i, (r, a) in enumerate(zip(table.representatives, table.aut_orders))]
    text = _table(rows, ("class", "matrices", "#Aut")) + f"\nsum 1/#Aut = {table.groupoid_cardinality()}"
    return out, text


def _hall_operand(Q, q, arg):
    from .hall import HallElement

    data = _load_json(arg, "Hall operand")
    if isinstance(data, dict) and "context" in data:
        return HallElement.from_json(data)
    return HallElement.indicator(_rep(Q, arg, q))


def cmd_hall_product(args):
    Q = _quiver(args.quiver)
    a = _hall_operand(Q, args.q, args.left)
    b = _hall_operand(Q, args.q, args.right)
    prod = a * b
    out = prod.to_json()
    rows = [(json.dumps(e["class"]["dim"]), json.dumps(e["class"]["mats"]), e["value"]) for e in out["coeffs"]]
    return out, _table(rows, ("dim", "matrices", "coefficient"))


def cmd_integrate(args):
    from .hall import integrate_counting

    Q = _quiver(args.quiver)
    phi = _hall_operand(Q, args.q, args.element)
    series = integrate_counting(phi, args.trunc)
    out = series.to_json()
    rows = [(json.dumps(list(a)), str(v)) for a, v in sorted(series.coeffs.items())]
    return out, _table(rows, ("T^alpha", "coefficient")) + f"\n(zeta = 1/{args.q}, truncated at total dimension {series.trunc})"


def cmd_motivic(args):
    from .hall import groupoid_count, motivic_class_total

    Q = _quiver(args.quiver)
    alpha = _ints(args.dim, "--dim")
    c = motivic_class_total(Q, alpha)
    out = {"dim": list(alpha), "class": c.to_json(), "formatted": c.format("L")}
    text = f"[M_{list(alpha)}] = {c.format('L')}"
    if args.q:
        val, brute = evaluate(c, args.q), groupoid_count(Q, alpha, args.q)
        out.update({"q": args.q, "value": str(val), "bruteforce": str(brute)})
        text += f"\nat L = {args.q}: {val} (enumeration: {brute})"
        if val != brute:
            raise ConsistencyError(f"counting measure identity fails at q={args.q}, dim={list(alpha)}")
    return out, text


def cmd_hn_type(args):
    from .slope import hn_report, hn_types

    Q = _quiver(args.quiver)
    alpha = _ints(args.dim, "--dim")
    s = _stability(args, Q.n)
    if args.q:
        report = hn_report(Q, alpha, s, args.q)
        rows = [(json.dumps(e["type"]), e["count"]) for e in report]
        return report, _table(rows, ("type", "count"))
    types = [[list(a) for a in tau] for tau in hn_types(alpha, s)]
    return types, "\n".join(json.dumps(t) for t in types)


def cmd_hn_filtration(args):
    from .slope import hn_filtration

    Q = _quiver(args.quiver)
    E = _rep(Q, args.rep, args.q)
    s = _stability(args, Q.n)
    hn = hn_filtration(E, s)
    out = hn.to_json()
    text = "type: " + json.dumps(out["type"]) + "\n" + "\n".join(
        f"F_{i + 1}: {json.dumps(st)}" for i, st in enumerate(out["steps"]))
    return out, text


def cmd_semistable(args):
    from .slope import count_semistable_bruteforce, semistable_motivic_class

    Q = _quiver(args.quiver)
    alpha = _ints(args.dim, "--dim")
    s = _stability(args, Q.n)
    rec = semistable_motivic_class(Q, alpha, s, "recursive")
    inv = semistable_motivic_class(Q, alpha, s, "inversion")
    if rec != inv:
        raise ConsistencyError(f"HN recursion and Reineke inversion disagree at dim={list(alpha)}, theta={list(s.theta)}")
    out = {"dim": list(alpha), "stability": s.to_json(), "class": rec.to_json(), "formatted": rec.format("L")}
    text = f"[ss M_{list(alpha)}] = {rec.format('L')}  (recursion = inversion)"
    if args.q:
        val, brute = evaluate(rec, args.q), count_semistable_bruteforce(Q, alpha, s, args.q)
        out.update({"q": args.q, "value": str(val), "bruteforce": str(brute)})
        text += f"\nat L = {args.q}: {val} (enumeration: {brute})"
        if val != brute:
            raise ConsistencyError(f"semistable counting measure fails at q={args.q}, dim={list(alpha)}")
    return out, text


def cmd_flag(args):
    from .slope import FlagType, flag_groupoid_class

    delta = _ints(args.delta, "--delta")
    ft = FlagType(args.r, delta)
    g = gaussian_multinomial(args.r, delta)
    P = parabolic_order(delta)
    cls = flag_groupoid_class(ft)
    out = {"r": args.r, "delta": list(delta), "euler_poincare": g.to_json(), "formatted": g.format("t"),
           "parabolic_order": P.to_json(), "parabolic_order_formatted": P.format("L"),
           "groupoid_class": cls.to_json()}
    text = f"{g.format('t')}\n#P = {P.format('L')}\n[M] = {cls.format('L')}"
    return out, text


def _flag_type(args):
    from .slope import FlagType

    delta = _ints(args.delta, "--delta")
    weights = _fracs(args.weights, "--weights") if args.weights else None
    if weights is None:
        raise ValidationError("--weights is required for period domains")
    return FlagType(args.r, delta, weights)


def cmd_period_domain(args):
    from .slope import period_domain_count

    ft = _flag_type(args)
    if args.mode == "recursion":
        poly = period_domain_count(ft, args.field, "recursion", args.q)
        out = {"polynomial": poly.to_json(), "formatted": poly.format("t")}
        return out, poly.format("t")
    n = period_domain_count(ft, args.field, args.mode, args.q, args.k)
    t = args.q**args.k
    out = {"count": n, "t": t}
    return out, f"{n} semistable flags (t = {t})"


def cmd_equivariant(args):
    from .equivariant import equivariant_period_domain

    ft = _flag_type(args)
    f = equivariant_period_domain(ft, args.field, args.q if args.field == "Fq" else None)
    out = f.to_json()
    rows = [(lab, v.format("t")) for lab, v in zip(f.group.class_labels, f.values)]
    return out, f"{f.group.name}\n" + _table(rows, ("class", "value"))


def cmd_hecke(args):
    from .groups import FiniteGroup, general_linear_group, symmetric_group
    from .protoexact.hecke import convolution_constants, hecke_structure_constants

    if args.group:
        G = FiniteGroup.from_json(_load_json(args.group, "--group"))
    elif args.sym:
        G = symmetric_group(args.sym)
    elif args.gl:
        n, q = _ints(args.gl, "--gl")
        G = general_linear_group(n, q)
    else:
        raise ValidationError("give --group, --sym or --gl")
    if args.subgroup:
        K = _load_json(args.subgroup, "--subgroup")
        if not isinstance(K, list):
            raise ValidationError("--subgroup: expected an array of element indices")
    elif args.young:
        if not hasattr(G, "young_subgroup"):
            raise ValidationError("--young needs --sym")
        K = G.young_subgroup(_ints(args.young, "--young")).embedding
    elif args.borel:
        if not hasattr(G, "parabolic"):
            raise ValidationError("--borel needs --gl")
        K = G.parabolic((1,) * G.n).embedding
    else:
        raise ValidationError("give --subgroup, --young or --borel")
    H = hecke_structure_constants(G, K)
    if H.constants != convolution_constants(G, K).constants:
        raise ConsistencyError("Hecke structure constants disagree with double-coset convolution")
    out = H.to_json()
    out["associative"] = H.is_associative()
    rows = [(e["a"], e["b"], e["c"], e["value"]) for e in out["constants"]]
    return out, f"{H.rank} double cosets\n" + _table(rows, ("a", "b", "c", "T_a T_b [T_c]"))


def cmd_verify(args):
    from .hall import verify_associativity, verify_integration_morphism
    from .protoexact.categories import PointedSetCategory, RepCategory
    from .verify import run_suite, suite_2segal

    if args.config:
        cfg = _load_json(args.config, "--config")
        if not isinstance(cfg, dict):
            raise ValidationError("--config: expected a JSON object")
        for key, val in cfg.items():
            if key not in ("suite", "quiver", "q", "bound", "rmax", "pointed"):
                raise ValidationError(f"--config: unknown field {key!r}")
            if key == "quiver" and not isinstance(val, str):
                val = json.dumps(val)
            if getattr(args, key, None) in (None, False):
                setattr(args, key, val)
    if args.suite is None:
        raise ValidationError("--suite is required (flag or config field 'suite')")
    if args.suite not in SUITE_NAMES:
        raise ValidationError(f"--suite: unknown suite {args.suite!r}")
    kw = {}
    if args.suite in ("assoc", "integration", "recursion") and args.quiver:
        Q = _quiver(args.quiver)
        if args.suite == "assoc":
            report = verify_associativity(Q, args.bound if args.bound is not None else 3, args.q or 2)
        elif args.suite == "integration":
            report = verify_integration_morphism(Q, args.bound if args.bound is not None else 3, args.q or 2)
        else:
            kw = {"quivers": [Q], "qs": (args.q,) if args.q else (2, 3)}
            if args.bound is not None:
                kw["bound"] = args.bound
            report = run_suite("recursion", **kw)
        report.name = args.suite
    elif args.suite == "2segal" and (args.quiver or args.pointed):
        ctx = PointedSetCategory() if args.pointed else RepCategory(_quiver(args.quiver), args.q or 2)
        report = suite_2segal([ctx], args.bound if args.bound is not None else 3)
    else:
        if args.bound is not None and args.suite in ("assoc", "recursion", "2segal"):
            kw["bound"] = args.bound
        if args.suite == "characters" and args.rmax:
            kw["rmax"] = args.rmax
        report = run_suite(args.suite, **kw)
    out = report.to_json()
    lines = []
    for e in report.entries:
        lines.append(f"{'PASS' if e.ok else 'FAIL'}  {e.identity}  {json.dumps(e.params, default=str)}")
        if not e.ok:
            lines.append(f"      lhs = {_scalar_text(e.lhs)}\n      rhs = {_scalar_text(e.rhs)}")
    n_fail = len(report.failures())
    lines.append(f"{args.suite}: {len(report.entries) - n_fail}/{len(report.entries)} checks pass")
    return out, "\n".join(lines), (4 if n_fail else 0)


HANDLERS = {
    "euler": cmd_euler, "enumerate": cmd_enumerate, "hall-product": cmd_hall_product, "integrate": cmd_integrate,
    "motivic": cmd_motivic, "hn-type": cmd_hn_type, "hn-filtration": cmd_hn_filtration, "semistable": cmd_semistable,
    "flag": cmd_flag, "period-domain": cmd_period_domain, "equivariant": cmd_equivariant, "hecke": cmd_hecke,
    "verify": cmd_verify,
}


def build_parser():
    p = _Parser(prog="motivic-hall", description="Exact Hall algebra, HN recursion and period-domain computations.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--budget", type=int, help="enumeration budget (overrides HALL_BUDGET)")
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)

    def verb(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        sp.add_argument("--budget", type=int, default=argparse.SUPPRESS)
        return sp

    def quiver_opts(sp, q=True):
        sp.add_argument("--quiver", help="quiver JSON file, inline JSON, or one of a1, a2, kronecker")
        if q:
            sp.add_argument("--q", type=int, default=2, help="prime field size")

    def stab_opts(sp):
        sp.add_argument("--theta", help="degree weights, e.g. 1,0")
        sp.add_argument("--rank", help="rank weights (default all 1)")
        sp.add_argument("--stability", help='stability JSON {"theta": [...], "rank": [...]}')

    sp = verb("euler", "Euler form psi(x, y)")
    quiver_opts(sp, q=False)
    sp.add_argument("--x")
    sp.add_argument("--y")

    sp = verb("enumerate", "iso classes and automorphism orders")
    quiver_opts(sp)
    sp.add_argument("--dim")

    sp = verb("hall-product", "Hall product of two elements or representations")
    quiver_opts(sp)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)

    sp = verb("integrate", "counting integration map into the twisted ring")
    quiver_opts(sp)
    sp.add_argument("--element", required=True, help="Hall element JSON or representation JSON")
    sp.add_argument("--trunc", type=int, default=6)

    sp = verb("motivic", "class of the moduli stack of representations")
    quiver_opts(sp)
    sp.set_defaults(q=None)
    sp.add_argument("--dim")

    sp = verb("hn-type", "HN types of a dimension vector (with stratum counts if --q)")
    quiver_opts(sp)
    sp.set_defaults(q=None)
    sp.add_argument("--dim")
    stab_opts(sp)

    sp = verb("hn-filtration", "HN filtration of a representation")
    quiver_opts(sp)
    sp.add_argument("--rep", required=True)
    stab_opts(sp)

    sp = verb("semistable", "motivic class of the semistable locus")
    quiver_opts(sp)
    sp.set_defaults(q=None)
    sp.add_argument("--dim")
    stab_opts(sp)

    sp = verb("flag", "flag variety polynomial and parabolic order")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--delta", required=True)

    for name, help_ in (("period-domain", "semistable flags: polynomial or count"),
                        ("equivariant", "equivariant Euler characteristic of a period domain")):
        sp = verb(name, help_)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--delta", required=True)
        sp.add_argument("--weights", help="one weight per graded piece, e.g. 1,0")
        sp.add_argument("--field", choices=("Fq", "F1"), default="Fq")
        sp.add_argument("--q", type=int, default=2)
        if name == "period-domain":
            sp.add_argument("--mode", choices=("recursion", "bruteforce", "both"), default="recursion")
            sp.add_argument("--k", type=int, default=1, help="count points over F_{q^k}")

    sp = verb("hecke", "double-coset Hecke algebra structure constants")
    sp.add_argument("--group", help="group JSON: multiplication table")
    sp.add_argument("--sym", type=int, help="use S_r")
    sp.add_argument("--gl", help="use GL_n(F_q), given as n,q")
    sp.add_argument("--subgroup", help="JSON array of element indices")
    sp.add_argument("--young", help="Young subgroup composition (with --sym)")
    sp.add_argument("--borel", action="store_true", help="upper triangular subgroup (with --gl)")

    sp = verb("verify", "run a verification suite")
    sp.add_argument("--suite", help=", ".join(SUITE_NAMES))
    sp.add_argument("--config", help="JSON object with suite parameters (flags win)")
    quiver_opts(sp)
    sp.set_defaults(q=None)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--pointed", action="store_true", help="2segal on finite pointed sets")
    sp.add_argument("--rmax", type=int, help="characters: largest r")
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError(f"missing verb; choose one of {', '.join(VERBS)}")
        if args.budget is not None:
            if args.budget <= 0:
                raise ValidationError("--budget must be positive")
            errors.set_budget(args.budget)
        elif os.environ.get("HALL_BUDGET"):
            errors.get_budget()  # validates the environment value
        result = HANDLERS[args.verb](args)
        code = 0
        if len(result) == 3:
            payload, text, code = result
        else:
            payload, text = result
        if args.json:
            stdout.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
        else:
            stdout.write(text + "\n")
        return code
    except BudgetExceeded as exc:
        stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except ConsistencyError as exc:
        stderr.write(f"consistency failure: {exc}\n")
        return 4
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except HallError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    finally:
        errors.set_budget(None)


def main():
    sys.exit(run())

"""Command line entry point: ``cliffordweil <subcommand> ...``.

Exit codes: 0 success, 2 precondition violation, 3 cap exceeded,
4 consistency failure (including a FAIL verdict).
"""

import argparse
import os
import sys
from fractions import Fraction

from . import codes, conjinv, cwgroup, schurweyl, typespec
from .errors import CapExceeded, ConsistencyError, PreconditionError

EXIT_OK, EXIT_PRE, EXIT_CAP, EXIT_FAIL = 0, 2, 3, 4


class Failed(Exception):
    """A check ran to completion and failed."""


# ----------------------------------------------------------------------
# argument helpers


def load_base(spec):
    if os.path.exists(spec):
        with open(spec) as fh:
            return typespec.load_type(fh.read())
    try:
        return typespec.builtin(spec)
    except KeyError as e:
        raise PreconditionError(str(e.args[0])) from None


def int_list(text):
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def twisted_sum(args, base):
    if args.a:
        return typespec.TwistedSum(base, int_list(args.a))
    if args.len is not None:
        return typespec.TwistedSum.nn(base, args.len)
    raise PreconditionError("give a twist with --a or a length with --len")


def degree_arg(text, n, exps=None):
    """A full degree vector, or a pair (d_1, d_-1) on the positions of gamma_1 and gamma_-1."""
    d = int_list(text)
    if len(d) == n:
        return tuple(d)
    if len(d) == 2 and exps is not None:
        out = [0] * n
        out[0] = d[0]
        out[exps.index(max(exps))] += d[1]
        return tuple(out)
    raise PreconditionError(f"degree needs {n} entries (or 2 for gamma_1, gamma_-1)")


def emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def fmt_frac(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ----------------------------------------------------------------------
# subcommands


def classification(args, ts):
    method = args.method
    if method == "bruteforce":
        return codes.enumerate_bruteforce(ts)
    if method == "neighbors":
        N = ts.N // 2
        if ts.twist != typespec.TwistedSum.nn(ts.base, N).twist:
            raise PreconditionError("the neighbor method is seeded with T_{N,N} and needs Type (N, N)")
        t = len(codes.enumerate_codes(ts)) if ts.q**ts.N <= codes.WORD_CAP else None
        return codes.classify_neighbors(ts, codes.trivial(ts.base, N), t)
    if method == "doublecosets":
        reps = codes.double_cosets(ts)
        canon = {}
        for C in reps:
            K = codes.canonical_form(C)
            canon.setdefault(K.key, K)
        cls = sorted(canon.values(), key=lambda C: C.key)
        auts = [codes.aut_order(C) for C in cls]
        return codes.Classification(ts, cls, auts, None, "doublecosets (codes of the form (I|A) only)")
    raise PreconditionError(f"unknown method {method}")


def cmd_validate_type(args):
    t = load_base(args.type)
    rep = typespec.validate(t)
    g = typespec.galois_setup(t)
    lines = [f"type = {t.name}", f"q = {t.q}", f"conductor = {t.conductor}", f"n = {g.n}", f"F = {g.F_description}"]
    emit(args, "\n".join(lines) + "\n" + typespec.format_report(rep) + "\n")
    if not all(ok for ok, _ in rep.values()):
        raise Failed("axioms fail")


def cmd_enumerate(args):
    ts = twisted_sum(args, load_base(args.type))
    emit(args, codes.format_classification(classification(args, ts)))


cmd_classify = cmd_enumerate


def cmd_mass_check(args):
    ts = twisted_sum(args, load_base(args.type))
    cl = classification(args, ts)
    if cl.t is None:
        cl.t = len(codes.enumerate_codes(ts))
    ok = codes.mass_check(cl)
    m = cl.mass()
    emit(args, f"classes = {len(cl.classes)}\nt = {cl.t}\nsum 1/|Aut| = {fmt_frac(m)}\n"
         f"t/|group| = {fmt_frac(Fraction(cl.t, cl.group_order))}\nmass identity = {'PASS' if ok else 'FAIL'}\n")
    if not ok:
        raise Failed("mass identity fails")


def cmd_we(args):
    base = load_base(args.type)
    if not args.code:
        raise PreconditionError("we needs --code FILE")
    with open(args.code) as fh:
        C = codes.parse_code(fh.read(), base)
    P = conjinv.ccwe(C, args.genus)
    lines = [f"# ccwe genus={args.genus} degree={' '.join(map(str, C.ts.degree))} terms={len(P.terms)}"]
    for mon, c in P.sorted_terms():
        lines.append(f"{fmt_frac(c.to_fraction())} {' '.join(map(str, mon.exponents().ravel()))}")
    emit(args, "\n".join(lines) + "\n")


def cmd_invariant_dim(args):
    t = load_base(args.type)
    G = cwgroup.group_for(t, args.genus)
    exps = conjinv._ambient_exponents(t)
    d = degree_arg(args.degree, len(exps), exps)
    a = conjinv.invariant_dim(G, d, method=args.dim_method)
    emit(args, f"type = {t.name}\ngenus = {args.genus}\ndegree = {' '.join(map(str, d))}\ninvariant_dim = {a}\n")


def cmd_molien(args):
    t = load_base(args.type)
    G = cwgroup.group_for(t, args.genus)
    G.closure(args.element_cap)
    exps = conjinv._ambient_exponents(t)
    caps = degree_arg(args.cap, len(exps), exps)
    s = conjinv.molien(G, caps)
    emit(args, f"# order = {G.order}\n" + s.dump())


def cmd_verify_main(args):
    ts = twisted_sum(args, load_base(args.type))
    rep = conjinv.verify_main(ts, args.genus)
    emit(args, rep.format())
    if rep.verdict == "FAIL":
        raise Failed("rank differs from invariant dimension")


def cmd_schur_weyl(args):
    t = load_base(args.type)
    rep = schurweyl.verify_schurweyl(t, args.genus, args.len)
    emit(args, rep.format())
    if rep.verdict != "PASS":
        raise Failed("Schur-Weyl check fails")


def cmd_demo(args):
    if args.which != "sign-condition":
        raise PreconditionError(f"unknown demo {args.which}")
    rep = conjinv.counterexample_demo()
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, (ok, detail) in rep.items()]
    emit(args, "\n".join(lines) + "\n")
    if not all(ok for ok, _ in rep.values()):
        raise Failed("sign-condition demo fails")


# ----------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="cliffordweil", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, *, type_=True, twist=False, genus=False, method=False):
        s = sub.add_parser(name)
        if type_:
            s.add_argument("--type", required=True, help="built-in name or descriptor file")
        if twist:
            s.add_argument("--a", help="twist, e.g. 1,2,2,2")
            s.add_argument("--len", type=int, help="N for Type (N, N)")
        if genus:
            s.add_argument("--genus", type=int, default=1)
        if method:
            s.add_argument("--method", choices=["bruteforce", "neighbors", "doublecosets"], default="bruteforce")
        s.add_argument("--out", help="write the report here instead of stdout")
        s.add_argument("--workers", type=int, default=1, help="accepted for compatibility; output never depends on it")
        s.set_defaults(fn=fn)
        return s

    add("validate-type", cmd_validate_type)
    add("enumerate", cmd_enumerate, twist=True, method=True)
    add("classify", cmd_classify, twist=True, method=True)
    add("mass-check", cmd_mass_check, twist=True, method=True)
    s = add("we", cmd_we, genus=True)
    s.add_argument("--code", help="code file (header line, then generator rows)")
    s = add("invariant-dim", cmd_invariant_dim, genus=True)
    s.add_argument("--degree", required=True)
    s.add_argument("--dim-method", choices=["orbits", "dense"], default="orbits")
    s = add("molien", cmd_molien, genus=True)
    s.add_argument("--cap", required=True)
    s.add_argument("--element-cap", type=int, default=cwgroup.CLOSURE_CAP)
    add("verify-main", cmd_verify_main, twist=True, genus=True)
    s = add("schur-weyl", cmd_schur_weyl, genus=True)
    s.add_argument("--len", type=int, required=True)
    s = add("demo", cmd_demo, type_=False)
    s.add_argument("which", choices=["sign-condition"])
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except Failed as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return EXIT_FAIL
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (PreconditionError, ValueError, KeyError) as e:
        print(f"precondition: {e}", file=sys.stderr)
        return EXIT_PRE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

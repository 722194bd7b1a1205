"""``nilcoh`` command line.

Exit status: 0 on success, 1 when an exact check fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .catalog import CATALOG_NAMES, get_entry
from .cohomology import (betti, bott_chern_11_dim, closed_11_forms, hodge_chase,
                         spectral_pages, twisted_betti, twisted_dolbeault_pq)
from .errors import CheckFailure, FormatError, NilcohError
from .differentials import apply_d
from .exterior import ExtForm, apply_I, format_form, parse_form
from .fileformat import AlgebraFile, format_file, from_entry, parse
from .lck import classify_lck
from .lie import is_integrable, is_nilpotent, lower_central_series
from .scalars import format_scalar, parse_rational

CONVENTIONS = (("wedge", "determinant"), ("omega", "h(I.,.)"), ("dc", "i(delbar-del)"))


class UsageError(Exception):
    pass


class Report:
    """Ordered ``key value`` pairs rendered as lines or as a table."""

    def __init__(self, header: bool = True):
        self.rows = []
        if header:
            for k, v in CONVENTIONS:
                self.rows.append(("convention", "%s=%s" % (k, v)))

    def add(self, key, value):
        self.rows.append((str(key), _text(value)))

    def render(self, fmt: str) -> str:
        if fmt == "lines":
            return "".join("%s %s\n" % kv for kv in self.rows)
        width = max(len(k) for k, _ in self.rows)
        return "".join("%s  %s\n" % (k.ljust(width), v) for k, v in self.rows)


def _text(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(_text(v) for v in value)
    if isinstance(value, int):
        return str(value)
    return format_scalar(value)


def _read(args) -> AlgebraFile:
    if args.file in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (args.file, exc.strerror)) from None
    return parse(text)


def _theta(args, af: AlgebraFile) -> ExtForm:
    if args.theta is None:
        if af.theta is None:
            raise UsageError("no --theta given and the file has no theta line")
        return af.theta_form()
    toks = args.theta.split()
    if len(toks) != af.dim:
        raise UsageError("--theta needs %d components, got %d" % (af.dim, len(toks)))
    try:
        return ExtForm.covector([parse_rational(t) for t in toks])
    except ValueError as exc:
        raise UsageError("--theta: %s" % exc) from None


def _need_j(af: AlgebraFile):
    cs = af.complex_structure()
    if cs is None:
        raise UsageError("this command needs J lines in the file")
    return cs


def _need_metric(af: AlgebraFile):
    h = af.hermitian_metric()
    if h is None:
        raise UsageError("this command needs a metric line in the file")
    return h


def cmd_validate(args, af, rep):
    g = af.algebra()
    rep.add("dim", g.dim)
    rep.add("basis", list(g.names))
    rep.add("nilpotent", is_nilpotent(g))
    rep.add("lower_central_series", [s.dim for s in lower_central_series(g)])
    cs = af.complex_structure()
    if cs is not None:
        rep.add("integrable", is_integrable(g, cs))
    if af.metric is not None:
        rep.add("metric_compatible", af.hermitian_metric().is_compatible(cs) if cs else None)
    rep.add("valid", True)


def cmd_betti(args, af, rep):
    for k, b in enumerate(betti(af.algebra())):
        rep.add("b%d" % k, b)


def cmd_twisted_betti(args, af, rep):
    g = af.algebra()
    for k, b in enumerate(twisted_betti(g, _theta(args, af))):
        rep.add("H %d" % k, b)


def cmd_dolbeault(args, af, rep):
    g = af.algebra()
    cs = _need_j(af)
    p = args.p
    if not 0 <= p <= g.dim // 2:
        raise UsageError("--p must lie in 0..%d" % (g.dim // 2))
    for q, h in enumerate(twisted_dolbeault_pq(g, cs, _theta(args, af), p)):
        rep.add("H %d,%d" % (p, q), h)


def cmd_spectral(args, af, rep):
    g = af.algebra()
    sp = spectral_pages(g, _need_j(af), _theta(args, af))
    rep.add("chain_a_dims", [a.dim for a in sp.chain.a_chain])
    rep.add("chain_w_dims", [w.dim for w in sp.chain.w_chain])
    rep.add("levels", list(sp.levels))
    rep.add("annihilator_condition", sp.annihilator_condition)
    rep.add("filtration_ok", sp.filtration_ok)
    rep.add("e0_matches_wedge", sp.e0_matches_wedge)
    for q, v in enumerate(sp.e1_by_degree()):
        rep.add("E1 %d" % q, v)
    rep.add("e1_total", sp.e1_total)


def cmd_bott_chern(args, af, rep):
    g = af.algebra()
    cs = _need_j(af)
    theta = _theta(args, af)
    rep.add("closed_11_dim", len(closed_11_forms(g, cs, theta)))
    rep.add("bott_chern_11", bott_chern_11_dim(g, cs, theta))


def cmd_chase(args, af, rep):
    g = af.algebra()
    cs = _need_j(af)
    try:
        omega = parse_form(args.omega, g.names, degree=2)
    except ValueError as exc:
        raise UsageError("--omega: %s" % exc) from None
    theta = _theta(args, af)
    res = hodge_chase(g, cs, theta, omega)
    rep.add("tau", format_form(res.tau, g.names))
    rep.add("constant", res.constant)
    rep.add("residual_d_theta_tau", format_form(apply_d(g, res.tau, theta) - omega, g.names))
    rep.add("residual_d_theta_I_tau", format_form(apply_d(g, apply_I(res.tau, cs), theta), g.names))


def _lck_rows(rep, g, cert):
    rep.add("omega", format_form(cert.omega, g.names))
    rep.add("is_lck", cert.is_lck)
    rep.add("lee", None if cert.lee is None else format_form(cert.lee, g.names))
    rep.add("is_kahler", cert.is_kahler)
    rep.add("lee_closed", cert.lee_closed)
    rep.add("lee_norm_sq", cert.lee_norm_sq)
    rep.add("is_vaisman", cert.is_vaisman)


def cmd_lck(args, af, rep):
    g = af.algebra()
    cs = _need_j(af)
    h = _need_metric(af)
    if not h.is_compatible(cs):
        raise CheckFailure("metric is not J-invariant")
    cert = classify_lck(g, cs, h)
    _lck_rows(rep, g, cert)
    rep.add("potential_constant", cert.potential_constant)


def cmd_classify(args, af, rep):
    g = af.algebra()
    cs = _need_j(af)
    h = _need_metric(af)
    if not h.is_compatible(cs):
        raise CheckFailure("metric is not J-invariant")
    cert = classify_lck(g, cs, h)
    _lck_rows(rep, g, cert)
    rep.add("vaisman_identity_ok", cert.vaisman_identity_ok)
    rep.add("omega0_inertia", cert.omega0_inertia)
    rep.add("lee_ideal", cert.lee_ideal_ok)
    rep.add("quotient_abelian", cert.quotient_abelian)
    for note in cert.notes:
        rep.add("note", note)
    rep.add("green", cert.green)
    rep.add("is_heisenberg_x_line", cert.is_heisenberg_x_line)
    rep.add("potential_constant", cert.potential_constant)


def cmd_catalog(args, out) -> None:
    try:
        entry = get_entry(args.name, args.n, args.seed)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0])) from None
    text = format_file(from_entry(entry))
    if args.export is None:
        out.write("# %s: %s\n" % (entry.name, entry.notes) if entry.notes else "")
        out.write(text)
    elif args.export == "-":
        out.write(text)
    else:
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(text)


COMMANDS = {
    "validate": (cmd_validate, "parse and check an algebra file"),
    "betti": (cmd_betti, "Betti numbers of the Chevalley-Eilenberg complex"),
    "twisted-betti": (cmd_twisted_betti, "cohomology of d_theta = d - theta^"),
    "dolbeault": (cmd_dolbeault, "twisted Dolbeault cohomology H^{p,q}"),
    "spectral": (cmd_spectral, "first pages of the weight spectral sequence"),
    "bott-chern": (cmd_bott_chern, "d_theta-closed (1,1)-forms modulo d_theta d^c_theta"),
    "chase": (cmd_chase, "solve omega = d_theta tau with d_theta(I tau) = 0"),
    "lck": (cmd_lck, "fundamental form, Lee form and Vaisman test"),
    "classify": (cmd_classify, "full LCK certificate"),
}
THETA_COMMANDS = ("twisted-betti", "dolbeault", "spectral", "bott-chern", "chase")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilcoh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version="nilcoh " + __version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", nargs="?", help="algebra file (default: stdin)")
    common.add_argument("--format", choices=("lines", "text"), default="lines")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if name in THETA_COMMANDS:
            sp.add_argument("--theta", help="real covector, space-separated rationals "
                                            "(default: the file's theta line)")
        if name == "dolbeault":
            sp.add_argument("--p", type=int, default=0)
        if name == "chase":
            sp.add_argument("--omega", required=True, help="real 2-form, e.g. '1 X^Y -1 Z^T'")
    cat = sub.add_parser("catalog", help="print a built-in example as an algebra file")
    cat.add_argument("name", choices=CATALOG_NAMES)
    cat.add_argument("--n", type=int, help="Heisenberg index, or dimension for abelian/random")
    cat.add_argument("--seed", type=int, default=0, help="seed for 'random'")
    cat.add_argument("--export", nargs="?", const="-", metavar="PATH",
                     help="write the bare canonical file to PATH (default: stdout)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.command == "catalog":
            cmd_catalog(args, out)
            return 0
        af = _read(args)
        rep = Report(header=args.command != "validate")
        COMMANDS[args.command][0](args, af, rep)
        out.write(rep.render(args.format))
        return 0
    except CheckFailure as exc:
        print("nilcoh: check failed: %s" % exc, file=sys.stderr)
        return 1
    except FormatError as exc:
        name = args.file if args.file not in (None, "-") else "<stdin>"
        print("nilcoh: %s:%s" % (name, exc), file=sys.stderr)
        return 2
    except (UsageError, NilcohError) as exc:
        print("nilcoh: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status is 0 on success, 1 on invalid input and 2 when the element
budget overflowed (partial output is still written, ending in an
``overflow`` marker row).  Files are written atomically and identical
invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import heisenberg as heis
from . import lie_algebra as la_mod
from ._budget import BudgetExceeded, default_budget
from .balls import GrowthRecord, GrowthSeries, ball_growth
from .groups import (Abelian, Cyclic, FreeNilpotent, GeneratingSet, IntegerHeisenberg, LieProgression,
                     OrderedProgression, Unitriangular, enumerate_progression, is_m_proper,
                     upper_triangular_check)
from .growth_profile import envelope, growth_polynomial, loglog_profile, profile_deviation
from .lie_algebra import LieAlgebra, homogeneous_dimension

OK, INVALID, OVERFLOW = 0, 1, 2


class InputError(ValueError):
    pass


def fmt_float(x: float) -> str:
    """15 significant digits; Python's float formatting rounds half-to-even on the exact binary value."""
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(float(x), ".15g")


# -- descriptors -----------------------------------------------------------------

def _params(text: str) -> dict[str, int]:
    out = {}
    for part in filter(None, text.split(",")):
        key, sep, val = part.partition("=")
        if not sep:
            raise InputError(f"expected key=value, got {part!r}")
        try:
            out[key.strip()] = int(val)
        except ValueError:
            raise InputError(f"parameter {key!r} is not an integer: {val!r}") from None
    return out


def _need(params: dict, *keys):
    missing = [k for k in keys if k not in params]
    if missing:
        raise InputError(f"missing parameter(s) {', '.join(missing)}")
    extra = set(params) - set(keys)
    if extra:
        raise InputError(f"unknown parameter(s) {', '.join(sorted(extra))}")
    return [params[k] for k in keys]


_S_RE = re.compile(r"^S\((\d+),(\d+)\)$")


def parse_group(text: str):
    """``heisenberg``, ``abelian:d=2``, ``cyclic:n=7``, ``unitriangular:n=4``, ``free:d=2,s=3``.

    ``heisenberg:<gens>`` is also accepted and returns the context together
    with the generator descriptor.
    """
    kind, _, rest = text.strip().partition(":")
    if kind == "heisenberg":
        if rest.startswith("twist="):
            (t,) = _need(_params(rest), "twist")
            return IntegerHeisenberg(t), None
        return IntegerHeisenberg(), rest or None
    try:
        if kind == "abelian":
            return Abelian(*_need(_params(rest), "d")), None
        if kind == "cyclic":
            return Cyclic(*_need(_params(rest), "n")), None
        if kind == "unitriangular":
            return Unitriangular(*_need(_params(rest), "n")), None
        if kind == "free":
            return FreeNilpotent(*_need(_params(rest), "d", "s")), None
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown group kind {kind!r}")


def _parse_elements(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(c) for c in chunk.split(",")) for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise InputError(f"cannot parse element list {text!r}") from None


def parse_generating_set(ctx, gens: str | None) -> GeneratingSet:
    """``standard``, ``S(j,k)`` (Heisenberg only) or an inline list ``1,0,0;-1,0,0``."""
    gens = (gens or "standard").strip()
    if gens == "standard":
        return GeneratingSet.standard(ctx)
    m = _S_RE.match(gens.replace(" ", ""))
    if m:
        if not isinstance(ctx, IntegerHeisenberg) or ctx.twist != 1:
            raise InputError("S(j,k) needs the Heisenberg group")
        j, k = int(m.group(1)), int(m.group(2))
        if j < 1 or k < 1:
            raise InputError("S(j,k) needs j, k >= 1")
        return heis.s_family(j, k).generating_set()
    elems = _parse_elements(gens)
    for g in elems:
        if not _is_element(ctx, g):
            raise InputError(f"{g} is not an element of {ctx.descriptor()}")
    try:
        return GeneratingSet(ctx, elems)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _is_element(ctx, g) -> bool:
    if len(g) != len(ctx.identity):
        return False
    try:
        return ctx.multiply(ctx.identity, g) == g
    except (ValueError, TypeError, IndexError):
        return False


def parse_algebra(text: str) -> LieAlgebra:
    """A JSON file path, or one of ``heisenberg``, ``abelian:d=2``, ``free:d=2,s=3``."""
    kind, _, rest = text.partition(":")
    if kind == "heisenberg" and not rest:
        return la_mod.heisenberg()
    if kind == "abelian":
        return la_mod.abelian(*_need(_params(rest), "d"))
    if kind == "free":
        return la_mod.free_nilpotent(*_need(_params(rest), "d", "s"))
    try:
        return la_mod.load(text)
    except FileNotFoundError:
        raise InputError(f"no such algebra file {text!r}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra {text!r}: {exc}") from None


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _frac_list(text: str, what: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{what} must be comma-separated rationals, got {text!r}") from None


# -- output ----------------------------------------------------------------------

def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def growth_csv(series: GrowthSeries) -> str:
    rows = [(r.m, r.ball, r.sphere) for r in series.records]
    if series.overflow:
        rows.append(("overflow", "", ""))
    return csv_text(("m", "ball", "sphere"), rows)


def read_growth_csv(text: str) -> GrowthSeries:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["m", "ball", "sphere"]:
        raise InputError("not a growth CSV")
    series = GrowthSeries()
    for row in rows[1:]:
        if row[0] == "overflow":
            series.overflow = True
        else:
            series.records.append(GrowthRecord(*(int(x) for x in row)))
    return series


def growth_json(series: GrowthSeries) -> str:
    return json_text({"overflow": series.overflow,
                      "records": [[r.m, r.ball, r.sphere] for r in series.records]})


def _frac_pairs(items):
    return [[k, c.numerator, c.denominator] for k, c in items]


def profile_dict(poly, h, profile) -> dict:
    return {
        "polynomial": _frac_pairs(poly.items()),
        "envelope": _frac_pairs((p.degree, p.coeff) for p in h.pieces),
        "breakpoints": [float(fmt_float(b)) for b in profile.breakpoints],
        "slopes": profile.slopes,
    }


def deviation_csv(report, overflow: bool) -> str:
    rows = [(r.m, fmt_float(r.log_ball), fmt_float(r.profile), fmt_float(r.residual)) for r in report.rows]
    if overflow:
        rows.append(("overflow", "", "", ""))
    return csv_text(("m", "log_ball", "profile", "residual"), rows)


# -- commands --------------------------------------------------------------------

def _source_set(args) -> GeneratingSet:
    if args.algebra:
        if not args.lengths:
            raise InputError("--algebra needs --lengths")
        P = _lie_progression(args)
        ctx = P.context
        elems = enumerate_progression(P.ordered(), args.budget).elements
        return GeneratingSet.symmetric_closure(ctx, elems)
    if not args.group:
        raise InputError("give --group or --algebra")
    ctx, inline = parse_group(args.group)
    if inline and args.gens:
        raise InputError("generators given twice")
    return parse_generating_set(ctx, inline or args.gens)


def _lie_progression(args) -> LieProgression:
    alg = parse_algebra(args.algebra)
    lengths = _int_list(args.lengths, "--lengths")
    C = Fraction(args.C) if args.C else None
    try:
        return LieProgression(alg, lengths, C=C)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_growth(args) -> int:
    S = _source_set(args)
    series = ball_growth(S, args.max_m, args.budget, method=args.method)
    emit(growth_json(series) if args.format == "json" else growth_csv(series), args.out)
    return OVERFLOW if series.overflow else OK


def cmd_profile(args) -> int:
    if not args.algebra or not args.lengths:
        raise InputError("profile needs --algebra and --lengths")
    P = _lie_progression(args)
    poly = growth_polynomial(P)
    h = envelope(poly)
    profile = loglog_profile(h)
    status = OK
    if args.compare_max_m:
        S = GeneratingSet.symmetric_closure(P.context, enumerate_progression(P.ordered(), args.budget).elements)
        series = ball_growth(S, args.compare_max_m, args.budget)
        status = OVERFLOW if series.overflow else OK
        dev_path = args.deviation_out or (str(args.out) + ".deviation.csv" if args.out else None)
        text = deviation_csv(profile_deviation(series, profile), series.overflow) if series.m_max >= 1 \
            else csv_text(("m", "log_ball", "profile", "residual"), [("overflow", "", "", "")])
        if dev_path:
            write_atomic(dev_path, text)
        else:
            sys.stderr.write(text)
    emit(json_text(profile_dict(poly, h, profile)), args.out)
    return status


def cmd_hdim(args) -> int:
    if not args.algebra:
        raise InputError("hdim needs --algebra")
    alg = parse_algebra(args.algebra)
    try:
        hd = homogeneous_dimension(alg)
    except la_mod.NotNilpotentError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        emit(json_text({"dim": alg.dim, "hdim": hd}), args.out)
    else:
        emit(f"dim={alg.dim} hdim={hd}\n", args.out)
    return OK


def cmd_prog_check(args) -> int:
    if not args.lengths:
        raise InputError("prog-check needs --lengths")
    if args.algebra:
        lie = _lie_progression(args)
        P = lie.ordered()
    else:
        if not args.group or not args.gens:
            raise InputError("prog-check needs --algebra, or --group with ordered --gens")
        ctx, _ = parse_group(args.group)
        gens = _parse_elements(args.gens)
        for g in gens:
            if not _is_element(ctx, g):
                raise InputError(f"{g} is not an element of {ctx.descriptor()}")
        try:
            P = OrderedProgression(ctx, gens, _int_list(args.lengths, "--lengths"))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        lie = None
    pset = enumerate_progression(P, args.budget)
    result = {"size": len(pset), "raw_count": pset.raw_count}
    if args.C:
        result["upper_triangular"] = upper_triangular_check(lie or P, Fraction(args.C), args.budget)
    if args.proper_m:
        result["m_proper"] = is_m_proper(P, Fraction(args.proper_m), args.budget)
    if args.format == "json":
        emit(json_text(result), args.out)
    else:
        emit(csv_text(("key", "value"), [(k, str(v).lower()) for k, v in result.items()]), args.out)
    return OK


def cmd_collapse(args) -> int:
    rows = heis.collapse_grid(range(1, args.i_max + 1), range(1, args.j_max + 1), args.m_max, args.budget)
    bad = [r for r in rows if r.counterexample]
    if bad:
        sys.stderr.write(f"{len(bad)} counterexample(s) to the collapsing identity\n")
    if args.format == "json":
        emit(json_text([[r.i, r.j, r.m, r.required, r.equal] for r in rows]), args.out)
    else:
        emit(csv_text(("i", "j", "m", "required", "equal"),
                      [(r.i, r.j, r.m, int(r.required), int(r.equal)) for r in rows]), args.out)
    return OK


def cmd_prop16(args) -> int:
    ns = _int_list(args.n, "--n")
    fs = _frac_list(args.f, "--f")
    if len(ns) != len(fs):
        raise InputError("--n and --f need the same number of entries")
    if any(f < 1 for f in fs):
        raise InputError("f values must be >= 1")
    try:
        rows = heis.prop16_table(dict(zip(ns, fs)), ns, args.budget)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    header = ("n", "f", "a", "k", "size", "radius", "ball", "ratio", "size_norm", "ball_norm")
    out = [(r.n, fmt_float(r.f), fmt_float(r.a), r.k, r.size, r.radius, r.ball,
            fmt_float(r.ratio), fmt_float(r.size_norm), fmt_float(r.ball_norm)) for r in rows]
    partial = any(not r.complete for r in rows)
    if partial:
        out.append(("overflow",) + ("",) * (len(header) - 1))
    emit(csv_text(header, out), args.out)
    return OVERFLOW if partial else OK


def _parse_scales(text: str) -> list[tuple[int, int]]:
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ":" in part:
            N, q = part.split(":")
            out.append((int(N), int(q)))
        else:
            out.append((int(part), int(part)))
    return out


def cmd_cc(args) -> int:
    try:
        scales = _parse_scales(args.scales)
    except ValueError:
        raise InputError(f"cannot parse --scales {args.scales!r}") from None
    points = []
    for p in args.point:
        coords = _frac_list(p, "--point")
        if len(coords) != 3:
            raise InputError(f"point {p!r} needs three coordinates")
        points.append(tuple(coords))
    header = ["point"] + [f"{N}:{q}" for N, q in scales]
    rows, status = [], OK
    for p in points:
        row = [" ".join(str(c) for c in p)]
        for N, q in scales:
            if status == OVERFLOW:
                row.append("overflow")
                continue
            try:
                row.append(fmt_float(heis.cc_estimate(p, N, q, args.budget)))
            except BudgetExceeded:
                row.append("overflow")
                status = OVERFLOW
            except ValueError as exc:
                raise InputError(str(exc)) from None
        rows.append(row)
    emit(csv_text(header, rows), args.out)
    return status


# -- argument parsing --------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=_positive, default=None,
                        help="element budget (default: $NILGROWTH_BUDGET or 2e7)")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    p = _Parser(prog="nilgrowth", description="Growth of nilpotent groups and Lie progressions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("growth", parents=[common], help="ball sizes |S^m|")
    g.add_argument("--group")
    g.add_argument("--gens")
    g.add_argument("--algebra")
    g.add_argument("--lengths")
    g.add_argument("--C")
    g.add_argument("--max-m", type=_nonneg, required=True)
    g.add_argument("--method", choices=("auto", "bfs", "fibers"), default="auto")
    g.set_defaults(func=cmd_growth)

    pr = sub.add_parser("profile", parents=[common], help="analytic growth profile of a Lie progression")
    pr.add_argument("--algebra", required=True)
    pr.add_argument("--lengths", required=True)
    pr.add_argument("--C")
    pr.add_argument("--compare-max-m", type=_positive)
    pr.add_argument("--deviation-out")
    pr.set_defaults(func=cmd_profile)

    h = sub.add_parser("hdim", parents=[common], help="dimension and homogeneous dimension")
    h.add_argument("--algebra", required=True)
    h.set_defaults(func=cmd_hdim)

    pc = sub.add_parser("prog-check", parents=[common], help="size, upper-triangular form, m-properness")
    pc.add_argument("--group")
    pc.add_argument("--gens")
    pc.add_argument("--algebra")
    pc.add_argument("--lengths")
    pc.add_argument("--C")
    pc.add_argument("--proper-m")
    pc.set_defaults(func=cmd_prog_check)

    hz = sub.add_parser("heisenberg", help="diagnostics for the S(j,k) family")
    hsub = hz.add_subparsers(dest="heis_command", required=True, parser_class=_Parser)
    c = hsub.add_parser("collapse", parents=[common])
    c.add_argument("--grid", action="store_true", help="run the whole grid (the default)")
    c.add_argument("--i-max", type=_positive, default=3)
    c.add_argument("--j-max", type=_positive, default=12)
    c.add_argument("--m-max", type=_positive, default=12)
    c.set_defaults(func=cmd_collapse)
    ps = hsub.add_parser("prop16", parents=[common])
    ps.add_argument("--n", required=True)
    ps.add_argument("--f", required=True)
    ps.set_defaults(func=cmd_prop16)
    cc = hsub.add_parser("cc", parents=[common])
    cc.add_argument("--point", action="append", required=True, help="u,v,w (rationals); repeatable")
    cc.add_argument("--scales", required=True, help="r (meaning N=q=r) or N:q, comma-separated")
    cc.set_defaults(func=cmd_cc)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.budget is None:
            args.budget = default_budget()
        return args.func(args)
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return OVERFLOW
    except (InputError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return INVALID


if __name__ == "__main__":
    sys.exit(main())

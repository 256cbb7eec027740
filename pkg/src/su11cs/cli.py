"""``su11`` command line.

Exit codes: 0 success, 1 a verification check failed, 2 invalid arguments,
3 numeric-domain error, 4 convergence or truncation failure, 5 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import figures
from .errors import ConvergenceError, DomainError, TruncationError
from .quantization import (
    count_crests, identity_resolution_check, portrait_density, radial_section,
)
from .squeezing import displacement_operator, squeezing_inequality_surfaces, squeezing_report
from .states import KAPPA_MAX, S_MAX, U_MAX, DiskAmplitude, RepresentationLabel, SU11Family
from .statistics import (
    distribution, invert_mean, mandel_q, mandel_q_limit_kappa_infinity, mean_photon_number,
    photocount_distribution, sample_counts,
)
from .verify import SUITES, format_report, run_verify

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_IO = 0, 1, 2, 3, 4, 5

_KAPPA_HELP = f"discrete-series label kappa (dimensionless), 0.5 < kappa <= {KAPPA_MAX:g}"
_S_HELP = f"fiducial photon number s (integer), 0 <= s <= {S_MAX}"
_U_HELP = f"squared disk modulus u = |alpha|^2 (dimensionless), 0 <= u < {U_MAX}"


def _float(text):
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _add_label(p, kappa=True, s=True):
    if kappa:
        p.add_argument("--kappa", type=_float, default=1.0, help=_KAPPA_HELP + " (default 1)")
    if s:
        p.add_argument("--s", type=int, default=0, help=_S_HELP + " (default 0)")


def _add_amplitude(p, rho=True):
    g = p.add_argument_group("amplitude (give at most one form; default alpha = 0)")
    g.add_argument("--u", type=_float, help=_U_HELP + "; alpha is taken real")
    g.add_argument("--alpha-mod", type=_float, help="|alpha| (dimensionless), 0 <= |alpha| < 1")
    g.add_argument("--alpha-arg", type=_float, default=0.0,
                   help="arg alpha in radians (default 0); used with --alpha-mod")
    if rho:
        g.add_argument("--rho", type=_complex,
                       help="rapidity rho (complex, e.g. 0.5+0.2j), alpha = tanh|rho| e^{i arg rho}")


def _add_common(p, tol=True):
    if tol:
        p.add_argument("--tol", type=_float, default=1e-12,
                       help="truncation tolerance on discarded probability, 1e-14 < tol < 1e-2 "
                            "(default 1e-12)")
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--format", choices=("csv", "svg"), default="csv", help="output format (default csv)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="su11",
        description="SU(1,1)-displaced coherent states: distributions, Mandel parameter, "
                    "squeezing, quantization checks and figure data.",
        epilog="exit codes: 0 ok, 1 verification failed, 2 bad arguments, 3 domain error, "
               "4 convergence/truncation failure, 5 I/O error")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("dist", help="photon-counting distribution P_n(u)")
    _add_label(p)
    _add_amplitude(p, rho=True)
    _add_common(p)
    p.add_argument("--samples", type=int, help="also draw this many counts (positive integer)")
    p.add_argument("--seed", type=int, default=0, help="sampler seed (integer, default 0)")

    p = sub.add_parser("photocount", help="counting law against the corrected mean Nbar = eta nbar")
    p.add_argument("--kappa", type=_float, default=1.0,
                   help="kappa >= 0.5, efficiency eta = 1/(2 kappa); kappa = 0.5 is Bose-Einstein")
    p.add_argument("--nbar", type=_float, default=1.0, help="corrected mean Nbar >= 0 (photons)")
    _add_common(p)

    p = sub.add_parser("mandel", help="Mandel parameter Q(u) on a u grid")
    _add_label(p)
    p.add_argument("--grid", type=int, default=100, help="number of u points in [0, 0.99), >= 2")
    _add_common(p, tol=False)

    p = sub.add_parser("mandel-limit", help="kappa -> infinity limit (2s + u)/(1 - u)")
    _add_label(p, kappa=False)
    p.add_argument("--grid", type=int, default=100, help="number of u points in [0, 0.99), >= 2")
    _add_common(p, tol=False)

    p = sub.add_parser("mean-n", help="mean photon number and its inverse")
    _add_label(p)
    _add_amplitude(p, rho=True)
    p.add_argument("--nbar", type=_float, help="invert: mean photon number >= s (photons)")
    _add_common(p, tol=False)

    p = sub.add_parser("squeeze-report", help="means and deviations of K0, K1, K2")
    _add_label(p)
    _add_amplitude(p, rho=True)
    _add_common(p, tol=False)

    p = sub.add_parser("squeeze-surface", help="squeezing margin over (|rho|, phi)")
    _add_label(p)
    p.add_argument("--grid", type=int, default=101, help="points per axis, >= 2 (default 101)")
    p.add_argument("--rho-max", type=_float, default=2.0, help="largest |rho|, 0 < |rho| <= 3")
    p.add_argument("--axis", choices=("K1", "K2"), default="K1", help="quadrature (default K1)")
    p.add_argument("--definition", choices=("paper", "we"), default="paper",
                   help="'paper': deviation vs |<K0>|/2; 'we': variance vs |<K0>|/2")
    _add_common(p, tol=False)

    p = sub.add_parser("portrait", help="phase-space portrait density on a polar grid")
    _add_label(p)
    _add_amplitude(p, rho=True)
    p.add_argument("--grid", type=int, default=64, help="cells per polar axis, >= 64 (default 64)")
    _add_common(p, tol=False)

    p = sub.add_parser("identity-check", help="diagonal of the resolved identity")
    _add_label(p)
    p.add_argument("--n-max", type=int, default=10, help="highest level checked, >= 0 (default 10)")
    _add_common(p, tol=False)

    p = sub.add_parser("displace-check", help="matrix-exponential displacement vs closed form")
    _add_label(p)
    p.add_argument("--rho", type=_complex, default=0.5 + 0j, help="rapidity, |rho| <= 3 (complex)")
    p.add_argument("--n-trunc", type=int, default=400, help="Fock truncation N > s (default 400)")
    _add_common(p, tol=False)

    p = sub.add_parser("figure", help="write CSV and/or SVG data for one figure")
    p.add_argument("--id", required=True, choices=figures.FIGURE_IDS, help="figure identifier")
    p.add_argument("--out", default=".", help="output directory (default .)")
    p.add_argument("--format", choices=("csv", "svg", "both"), default="both")
    p.add_argument("--tol", type=_float, default=1e-12, help="truncation tolerance (default 1e-12)")

    p = sub.add_parser("verify", help="run invariant suites; exit 0 iff all pass")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--override", action="append", default=[], metavar="NAME=TOL",
                   help="replace the tolerance of one check (repeatable)")
    p.add_argument("--out", help="report file (default: standard output)")
    return ap


def _label(args) -> RepresentationLabel:
    lab = RepresentationLabel(args.kappa, args.s)
    lab.check_support()
    return lab


def _amplitude(args, parser) -> DiskAmplitude:
    given = [x for x in ("u", "alpha_mod", "rho") if getattr(args, x, None) is not None]
    if len(given) > 1:
        parser.error("give at most one of --u, --alpha-mod, --rho")
    if args.u is not None:
        if args.u < 0:
            raise DomainError(f"u must be nonnegative, got {args.u}")
        return DiskAmplitude(math.sqrt(args.u))
    if args.alpha_mod is not None:
        if args.alpha_mod < 0:
            raise DomainError(f"|alpha| must be nonnegative, got {args.alpha_mod}")
        return DiskAmplitude.from_polar(args.alpha_mod, args.alpha_arg)
    if getattr(args, "rho", None) is not None:
        return DiskAmplitude.from_rapidity(args.rho)
    return DiskAmplitude(0.0)


def _check_tol(tol):
    if not 1e-14 < tol < 1e-2:
        raise DomainError(f"tol must lie in (1e-14, 1e-2), got {tol}")


def _check_grid(n, low, name="--grid"):
    if n < low:
        raise DomainError(f"{name} must be at least {low}, got {n}")


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def _emit_table(header, rows, args):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    _write_text(buf.getvalue(), args.out)


def _write_text(text, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror or exc}") from exc


def _emit(data: figures.FigureData, args):
    if args.format == "svg":
        if args.out is None:
            raise OSError("svg output needs --out PATH")
        figures.write_svg(data, args.out)
        return
    _emit_table(data.header, data.rows.tolist(), args)


def _require_csv(args, parser):
    if args.format != "csv":
        parser.error(f"{args.command} produces a table; only --format csv is available")


def _cmd_dist(args, parser):
    lab = _label(args)
    amp = _amplitude(args, parser)
    _check_tol(args.tol)
    if args.samples is not None:
        _check_grid(args.samples, 1, "--samples")
    d = distribution(lab, amp.u, args.tol)
    n = np.arange(d.probs.size, dtype=float)
    header, cols = ["n", "P"], [n, d.probs]
    if args.samples is not None:
        draws = sample_counts(d, args.samples, args.seed)
        header.append("frequency")
        cols.append(np.bincount(draws, minlength=d.probs.size)[: d.probs.size] / args.samples)
    _emit(figures.FigureData("dist", "lines", header, np.column_stack(cols)), args)


def _cmd_photocount(args, parser):
    _check_tol(args.tol)
    if not args.kappa >= 0.5:
        raise DomainError(f"kappa must be at least 0.5, got {args.kappa}")
    d = photocount_distribution(1.0 / (2 * args.kappa), args.nbar, args.tol)
    rows = np.column_stack([np.arange(d.probs.size, dtype=float), d.probs])
    _emit(figures.FigureData("photocount", "lines", ["n", "P"], rows), args)


def _cmd_mandel(args, parser):
    lab = _label(args)
    _check_grid(args.grid, 2)
    us = np.linspace(0, 0.99, args.grid, endpoint=False)
    rows = np.column_stack([us, [mandel_q(lab, u) for u in us]])
    _emit(figures.FigureData("mandel", "lines", ["u", "Q"], rows), args)


def _cmd_mandel_limit(args, parser):
    if args.s < 0:
        raise DomainError(f"s must be nonnegative, got {args.s}")
    _check_grid(args.grid, 2)
    us = np.linspace(0, 0.99, args.grid, endpoint=False)
    lab = RepresentationLabel(1e8, args.s)
    rows = np.column_stack([us, [mandel_q_limit_kappa_infinity(args.s, u) for u in us],
                            [mandel_q(lab, u) for u in us]])
    _emit(figures.FigureData("mandel-limit", "lines", ["u", "Q_infinity", "Q_kappa_1e8"], rows), args)


def _cmd_mean_n(args, parser):
    _require_csv(args, parser)
    lab = _label(args)
    if args.nbar is not None:
        if any(getattr(args, x) is not None for x in ("u", "alpha_mod", "rho")):
            parser.error("--nbar cannot be combined with an amplitude")
        u = invert_mean(lab, args.nbar)
    else:
        u = _amplitude(args, parser).u
    _emit_table(["kappa", "s", "u", "nbar"], [[lab.kappa, lab.s, u, mean_photon_number(lab, u)]], args)


def _cmd_squeeze_report(args, parser):
    _require_csv(args, parser)
    lab = _label(args)
    rep = squeezing_report(lab, _amplitude(args, parser))
    fields = ["mean_k0", "mean_k1", "mean_k2", "delta_k1", "delta_k2", "uncertainty_product",
              "bound", "squeezed_axis_paper_def", "squeezed_axis_we_def"]
    row = [getattr(rep, f) for f in fields]
    row = [v.value if hasattr(v, "value") else v for v in row]
    _emit_table(fields, [row], args)


def _cmd_squeeze_surface(args, parser):
    lab = _label(args)
    _check_grid(args.grid, 2)
    if not 0 < args.rho_max <= 3:
        raise DomainError(f"--rho-max must lie in (0, 3], got {args.rho_max}")
    rho = np.linspace(0, args.rho_max, args.grid)
    phi = np.linspace(0, 2 * np.pi, args.grid)
    delta = squeezing_inequality_surfaces(lab, rho, phi, args.axis, args.definition)
    rr, pp = np.meshgrid(rho, phi, indexing="ij")
    rows = np.column_stack([rr.ravel(), pp.ravel(), delta.ravel()])
    _emit(figures.FigureData("squeeze-surface", "heatmap", ["rho_abs", "phi", "delta"], rows,
                             {"shape": (args.grid, args.grid), "xlabel": "|rho|", "ylabel": "phi"}), args)


def _cmd_portrait(args, parser):
    lab = _label(args)
    amp = _amplitude(args, parser)
    _check_grid(args.grid, 64)
    p = portrait_density(lab, amp.alpha, args.grid, args.grid)
    rr, aa = np.meshgrid(p.radii, p.angles, indexing="ij")
    rows = np.column_stack([rr.ravel(), aa.ravel(), p.grid.ravel()])
    _emit(figures.FigureData("portrait", "polar", ["radius", "angle", "density"], rows,
                             {"shape": p.grid.shape}), args)
    if args.out is not None:
        _, section = radial_section(lab, amp.alpha)
        sys.stderr.write(f"crests along arg(alpha): {count_crests(section)}\n")


def _cmd_identity(args, parser):
    _require_csv(args, parser)
    lab = _label(args)
    _check_grid(args.n_max, 0, "--n-max")
    n = np.arange(args.n_max + 1)
    vals = identity_resolution_check(lab, n)
    _emit_table(["n", "integral", "error"], [[int(k), v, v - 1] for k, v in zip(n, vals)], args)


def _cmd_displace(args, parser):
    _require_csv(args, parser)
    lab = _label(args)
    u = displacement_operator(lab, args.rho, args.n_trunc)
    c = SU11Family(lab).coefficients(DiskAmplitude.from_rapidity(args.rho).alpha, args.n_trunc)
    col = u.matrix[:, lab.s]
    rows = [[n, col[n].real, col[n].imag, c[n].real, c[n].imag, abs(col[n] - c[n])]
            for n in range(args.n_trunc + 1)]
    _emit_table(["n", "exp_re", "exp_im", "closed_re", "closed_im", "abs_diff"], rows, args)


def _cmd_figure(args, parser):
    _check_tol(args.tol)
    for path in figures.run_figure(args.id, args.out, args.format, args.tol):
        sys.stderr.write(f"wrote {path}\n")


def _cmd_verify(args, parser):
    overrides = {}
    for item in args.override:
        name, sep, val = item.partition("=")
        if not sep:
            parser.error(f"--override expects NAME=TOL, got {item!r}")
        try:
            overrides[name] = float(val)
        except ValueError:
            parser.error(f"--override tolerance is not a number: {val!r}")
    try:
        rows = run_verify(args.suite, overrides)
    except ValueError as exc:
        parser.error(str(exc))
    _write_text(format_report(rows) + "\n", args.out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_CHECK


_COMMANDS = {
    "dist": _cmd_dist, "photocount": _cmd_photocount, "mandel": _cmd_mandel,
    "mandel-limit": _cmd_mandel_limit, "mean-n": _cmd_mean_n,
    "squeeze-report": _cmd_squeeze_report, "squeeze-surface": _cmd_squeeze_surface,
    "portrait": _cmd_portrait, "identity-check": _cmd_identity, "displace-check": _cmd_displace,
    "figure": _cmd_figure, "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        status = _COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return int(exc.code or 0)
    except DomainError as exc:
        sys.stderr.write(f"su11: domain error: {exc}\n")
        return EXIT_DOMAIN
    except (ConvergenceError, TruncationError) as exc:
        sys.stderr.write(f"su11: {exc}\n")
        return EXIT_CONVERGENCE
    except OSError as exc:
        sys.stderr.write(f"su11: I/O error: {exc}\n")
        return EXIT_IO
    return EXIT_OK if status is None else status


if __name__ == "__main__":
    sys.exit(main())

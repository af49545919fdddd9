"""Command-line surface: criterion curves, spectrum tables, transverse
instability runs, and the self-test.

All delimited output is deterministic CSV (UTF-8, LF, 17-significant-digit
floats); the ``figure`` command additionally renders a PNG of the curve
next to the CSV unless ``--no-plot`` is given.

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 solver
non-convergence, 4 self-test failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .criterion import defocusing_check, h_curve
from .elliptic import EllipticModulus
from .hill import PencilConvergenceError, PeriodicGrid, assemble_hill, eigs_symmetric
from .lame import OperatorKind, VALID_OPERATORS, physical_operator, physical_spectrum
from .transverse import (
    CriterionNotMetError,
    PencilKind,
    build_pencil,
    continue_branch,
    critical_wavenumber,
)
from .waves import WaveFamily, build

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_IO = 2
_EXIT_SOLVER = 3
_EXIT_SELFTEST = 4

_DEGENERATE_GAP = 1e-8  # absolute gap below which numerical pairs are "double"

_KP_FAMILIES = (
    WaveFamily.CNOIDAL_KDV,
    WaveFamily.DNOIDAL_MKDV,
    WaveFamily.SNOIDAL_DEFOCUSING_MKDV,
)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(_EXIT_USAGE)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path!r}: {exc}") from exc


class _IOFailure(RuntimeError):
    pass


def _kappa_grid(args) -> np.ndarray:
    if getattr(args, "kappa", None) is not None:
        if not 0.0 < args.kappa < 1.0:
            raise _UsageError(f"--kappa must lie in (0, 1), got {args.kappa}")
        return np.array([args.kappa])
    lo, hi, steps = args.kappa_min, args.kappa_max, args.steps
    if not (0.0 < lo <= hi < 1.0):
        raise _UsageError(f"need 0 < kappa-min <= kappa-max < 1, got [{lo}, {hi}]")
    if steps < 1:
        raise _UsageError(f"--steps must be >= 1, got {steps}")
    return np.linspace(lo, hi, steps)


class _UsageError(RuntimeError):
    pass


def _profile_for(args, kappa: float):
    family = WaveFamily(args.family)
    speed = args.speed if family is WaveFamily.CNOIDAL_KDV else None
    return build(family, EllipticModulus(kappa), args.alpha, speed)


# -- figure -----------------------------------------------------------------


def _cmd_figure(args) -> int:
    grid = _kappa_grid(args)
    if args.which == 1:
        reports = h_curve(WaveFamily.CNOIDAL_KDV, grid, args.alpha, args.speed)
    elif args.which == 2:
        reports = h_curve(WaveFamily.DNOIDAL_MKDV, grid, args.alpha)
    else:
        reports = defocusing_check(grid, args.alpha)
    header = [
        "kappa", "h", "lambda0", "lambda2", "int_psi0", "int_psi2",
        "norm_psi0", "norm_psi2", "unstable",
    ]
    rows = [
        [
            r.kappa, r.h_value, r.lambda0, r.lambda2, r.int_psi0, r.int_psi2,
            math.sqrt(r.norm2_psi0), math.sqrt(r.norm2_psi2), r.unstable,
        ]
        for r in reports
    ]
    out = args.out or f"figure{args.which}.csv"
    _write_csv(out, header, rows)
    print(f"wrote {len(rows)} rows to {out}")
    if not args.no_plot:
        from .plotting import render_criterion_curve

        png = render_criterion_curve(reports, args.which, Path(out).with_suffix(".png"))
        print(f"rendered {png}")
    return _EXIT_OK


# -- spectrum ----------------------------------------------------------------


def _cmd_spectrum(args) -> int:
    family = WaveFamily(args.family)
    kind = {"L": OperatorKind.L, "L-": OperatorKind.L_MINUS,
            "L+": OperatorKind.L_PLUS}[args.operator]
    if kind not in VALID_OPERATORS[family]:
        valid = ", ".join(k.value for k in VALID_OPERATORS[family])
        raise _UsageError(
            f"operator {kind.value!r} is not defined for family "
            f"{family.value!r}; valid operators: {valid}"
        )
    profile = _profile_for(args, args.kappa)
    op = physical_operator(profile, kind)
    closed = physical_spectrum(op)
    total = len(closed) + 5
    grid = PeriodicGrid(args.grid_n, op.domain_period)
    numerical = eigs_symmetric(assemble_hill(op.potential, grid), total).eigenvalues
    rows = []
    for i in range(total):
        num = numerical[i]
        if i < len(closed):
            cf = closed[i].eigenvalue
            rows.append([i, cf, num, abs(cf - num), closed[i].multiplicity])
        else:
            double = (i > 0 and num - numerical[i - 1] <= _DEGENERATE_GAP) or (
                i + 1 < total and numerical[i + 1] - num <= _DEGENERATE_GAP
            )
            rows.append([i, math.nan, num, math.nan, "double" if double else "simple"])
    out = args.out or "spectrum.csv"
    _write_csv(out, ["index", "closed_form", "numerical", "abs_error", "multiplicity"],
               rows)
    print(f"wrote {len(rows)} rows to {out}")
    return _EXIT_OK


# -- transverse ---------------------------------------------------------------


def _criterion_holds(family: WaveFamily, kappa: float, alpha: float,
                     speed: float) -> bool:
    if family is WaveFamily.CNOIDAL_KDV:
        return h_curve(family, [kappa], alpha, speed)[0].unstable
    if family is WaveFamily.DNOIDAL_MKDV:
        return h_curve(family, [kappa], alpha)[0].unstable
    if family is WaveFamily.SNOIDAL_DEFOCUSING_MKDV:
        return defocusing_check([kappa], alpha)[0].unstable
    return True  # NLS families: single negative eigenvalue by construction


def _cmd_transverse(args) -> int:
    family = WaveFamily(args.family)
    kind = PencilKind.KP if family in _KP_FAMILIES else PencilKind.NLS
    rows = []
    any_unstable = False
    any_converged = False
    attempted = 0
    for kappa in _kappa_grid(args):
        if not _criterion_holds(family, kappa, args.alpha, args.speed):
            print(f"criterion not met for family={family.value} kappa={kappa:g}; "
                  "no instability certified")
            rows.append([kappa, math.nan, 0, math.nan, math.nan, math.nan, math.nan])
            continue
        profile = _profile_for(args, kappa)
        grid = PeriodicGrid(args.grid_n, profile.period)
        pencil = build_pencil(kind, profile, grid)
        try:
            k0 = critical_wavenumber(pencil)
        except CriterionNotMetError as exc:
            print(f"criterion not met for family={family.value} kappa={kappa:g}: {exc}")
            rows.append([kappa, math.nan, 0, math.nan, math.nan, math.nan, math.nan])
            continue
        attempted += 1
        result = continue_branch(pencil, k0)
        for point in result.branch:
            rows.append([
                kappa, k0, result.kernel_dim, point.sigma, point.k,
                point.residual, 2.0 * math.pi / point.k,
            ])
            any_converged = True
        if result.branch:
            any_unstable = True
            print(f"spectrally unstable: yes (family={family.value} "
                  f"kappa={kappa:g} k0={k0:.12g})")
        if result.truncated_at is not None:
            print(f"branch truncated at sigma={result.truncated_at:g} "
                  f"(kappa={kappa:g}): left the perturbative regime")
    out = args.out or "transverse.csv"
    _write_csv(out, ["kappa", "k0", "kernel_dim", "sigma", "k_of_sigma",
                     "residual", "K2"], rows)
    print(f"wrote {len(rows)} rows to {out}")
    if attempted and not any_converged:
        print("no branch point converged at any sigma", file=sys.stderr)
        return _EXIT_SOLVER
    if not any_unstable:
        print("spectrally unstable: not certified")
    return _EXIT_OK


# -- selftest -----------------------------------------------------------------


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    results = run_selftest(args.grid_n, args.tol)
    width = max(len(r.name) for r in results)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    if failed:
        print(f"self-test failed: {', '.join(r.name for r in failed)}",
              file=sys.stderr)
        return _EXIT_SELFTEST
    print(f"self-test passed ({len(results)} checks)")
    return _EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_common(parser, kappa_default: float | None = None) -> None:
    parser.add_argument("--alpha", type=float, default=1.0,
                        help="wave scaling alpha > 0 (default 1)")
    parser.add_argument("--speed", type=float, default=1.0,
                        help="wave speed c for the kdv family (default 1)")
    parser.add_argument("--grid-n", type=int, default=256,
                        help="collocation points, even >= 16 (default 256)")
    parser.add_argument("--tol", type=float, default=1e-8,
                        help="tolerance for checks (default 1e-8)")
    parser.add_argument("--out", type=str, default=None, help="output CSV path")
    if kappa_default is not None:
        parser.add_argument("--kappa", type=float, default=kappa_default,
                            help="elliptic modulus in (0, 1)")


def _add_sweep(parser, single_kappa: bool) -> None:
    if single_kappa:
        parser.add_argument("--kappa", type=float, default=None,
                            help="single modulus (overrides the sweep flags)")
    parser.add_argument("--kappa-min", type=float, default=0.05)
    parser.add_argument("--kappa-max", type=float, default=0.95)
    parser.add_argument("--steps", type=int, default=19)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ellwaves",
        description="Periodic elliptic-function waves and their transverse "
                    "spectral instability",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="criterion curve over a kappa sweep")
    fig.add_argument("which", type=int, choices=(1, 2, 3),
                     help="1: cnoidal KdV, 2: dnoidal mKdV, 3: snoidal defocusing")
    _add_sweep(fig, single_kappa=False)
    _add_common(fig)
    fig.add_argument("--no-plot", action="store_true",
                     help="skip the PNG render next to the CSV")
    fig.set_defaults(func=_cmd_figure, kappa=None)

    spec = sub.add_parser("spectrum", help="closed-form vs numerical eigenvalues")
    spec.add_argument("--family", required=True,
                      choices=[f.value for f in WaveFamily])
    spec.add_argument("--operator", default="L", choices=["L", "L-", "L+"],
                      help="which linearized operator (default L)")
    _add_common(spec, kappa_default=0.5)
    spec.set_defaults(func=_cmd_spectrum)

    trans = sub.add_parser("transverse", help="full transverse-instability run")
    trans.add_argument("--family", required=True,
                       choices=[f.value for f in WaveFamily])
    _add_sweep(trans, single_kappa=True)
    _add_common(trans)
    trans.set_defaults(func=_cmd_transverse)

    self_p = sub.add_parser("selftest", help="run the invariant suite")
    self_p.add_argument("--grid-n", type=int, default=256)
    self_p.add_argument("--tol", type=float, default=1e-8)
    self_p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"ellwaves: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except ValueError as exc:
        print(f"ellwaves: error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except _IOFailure as exc:
        print(f"ellwaves: {exc}", file=sys.stderr)
        return _EXIT_IO
    except PencilConvergenceError as exc:
        print(f"ellwaves: solver failed: {exc}", file=sys.stderr)
        return _EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())

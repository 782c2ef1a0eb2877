"""Command-line driver: verify | diagrams | ybe | export | spectrum.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
Reports are JSON on stdout (or ``--out``) and echo the configuration.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import Flavor, check_relations
from .baxter import (
    FaceOperatorFamily, check_inversion, check_locality, check_ybe, dumps_weights,
    export_weights, grid_scan,
)
from .catalog import build_catalog
from .diagrams import check_catalog_exact, enumerate_basis
from .errors import CatalogViolation, CubicViolation, RankError, SizeTooLarge
from .transfer import TransferSpec, commutator_norm, spectrum, spectrum_csv
from .vertex import build_dbwm_rep_from_braid, build_dtl_rep, load_braid_file

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """``"0.6"``, ``"0.6,0.1"`` (re,im) or any Python complex literal."""
    text = text.strip()
    if "," in text:
        re, im = text.split(",")
        return complex(float(re), float(im))
    try:
        return complex(float(text))
    except ValueError:
        return complex(text.replace(" ", ""))


def parse_grid(text: str | None) -> list[complex]:
    """Comma list ``"0.1,0.2"`` or ``"start:stop:num"`` (inclusive linspace)."""
    if text is None:
        return []
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        a, b, n = text.split(":")
        return [complex(x) for x in np.linspace(float(a), float(b), int(n))]
    return [parse_complex(x) for x in text.split(";" if ";" in text else ",") if x.strip()]


def _cpx(z):
    z = complex(z)
    return [z.real, z.imag]


def _add_shared(p: argparse.ArgumentParser, n: int = 4, tol: float = 1e-10) -> None:
    p.add_argument("--flavor", default="dtl", choices=["dtl", "dbwm"])
    p.add_argument("--lambda", dest="lam", default="0.6",
                   help="crossing variable lambda; complex as re,im")
    p.add_argument("--n", type=int, default=n, help="chain sites")
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--omega", default=None, help="dBWM twist (re,im); overrides the braid file")
    p.add_argument("--sigma", type=int, default=None, choices=[-1, 1])
    p.add_argument("--braid-file", default=None)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dilute", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    _add_shared(sub.add_parser("verify", help="check the full relation catalog"))
    _add_shared(sub.add_parser("diagrams", help="exact diagram-oracle checks"), n=3)
    y = sub.add_parser("ybe", help="YBE / inversion / locality scan")
    _add_shared(y, tol=1e-9)
    y.add_argument("--u-grid", default=None,
                   help="grid used for both u and v: 'a,b,c' or 'start:stop:num' "
                        "(default: 0.1..0.5 of eta*lambda)")
    y.add_argument("--no-inversion", action="store_true")
    y.add_argument("--samples", type=int, default=10, help="random inversion points")
    e = sub.add_parser("export", help="dump face-operator weights")
    _add_shared(e)
    e.add_argument("--u", default="0.2")
    e.add_argument("--form", default="face", choices=["face", "r"])
    s = sub.add_parser("spectrum", help="transfer-matrix spectra")
    _add_shared(s, tol=1e-9)
    s.add_argument("--L", type=int, default=4)
    s.add_argument("--u-grid", default="0:0.4:5")
    s.add_argument("--k", type=int, default=None, help="keep the k largest eigenvalues")
    return p


def _config_echo(args) -> dict:
    out = {k: v for k, v in vars(args).items() if k != "func"}
    out["version"] = __version__
    return out


def _build_rep(args, n: int):
    if args.flavor == "dtl":
        return build_dtl_rep(parse_complex(args.lam), n)
    if not args.braid_file:
        raise UsageError("--flavor dbwm needs --braid-file")
    lam, omega, sigma, B = load_braid_file(args.braid_file)
    if args.omega is not None:
        omega = parse_complex(args.omega)
    if args.sigma is not None:
        sigma = args.sigma
    return build_dbwm_rep_from_braid(lam, omega, sigma, B, n=n, tol=args.tol, strict=False)


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=1, sort_keys=True, default=str) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    report = {"config": _config_echo(args), "command": "verify"}
    rep = _build_rep(args, args.n)
    result = rep.report if rep.report is not None else check_relations(
        rep, build_catalog(Flavor(rep.params.flavor), args.n - 1), args.tol, jobs=args.jobs)
    report["params"] = rep.params.to_json()
    report.update(result.to_json())
    report["relations"] = len(result.residuals)
    _emit(args, report)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_diagrams(args) -> int:
    n = args.n
    counts = {}
    for k in range(1, n + 1):
        a, b = enumerate_basis(k, "insertion"), enumerate_basis(k, "filter")
        counts[k] = {"insertion": len(a), "filter": len(b), "agree": a == b}
    exact = check_catalog_exact(build_catalog(Flavor.dTL, n - 1))
    ok = exact.passed and all(c["agree"] for c in counts.values())
    _emit(args, {"config": _config_echo(args), "command": "diagrams", "passed": ok,
                 "basis_counts": counts, "exact": exact.to_json()})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_ybe(args) -> int:
    if args.n < 3:
        raise UsageError("ybe needs --n >= 3")
    rep = _build_rep(args, args.n)
    form = "dtl" if args.flavor == "dtl" else "dbwm"
    fam = FaceOperatorFamily(rep, form)
    crossing = fam.params.eta * fam.params.lam
    grid = parse_grid(args.u_grid) if args.u_grid is not None else \
        [crossing * f for f in (0.1, 0.2, 0.3, 0.4, 0.5)]
    if not grid:
        raise UsageError("empty spectral grid")
    pts = [(j, u, v) for j in range(1, args.n - 1) for u in grid for v in grid]
    _, ybe_max, ybe_arg = grid_scan(lambda j, u, v: check_ybe(fam, j, u, v), pts, args.jobs)
    report = {"config": _config_echo(args), "command": "ybe",
              "ybe": {"max_residual": ybe_max,
                      "argmax": {"j": ybe_arg[0], "u": _cpx(ybe_arg[1]), "v": _cpx(ybe_arg[2])},
                      "points": len(pts)}}
    ok = ybe_max <= args.tol
    if not args.no_inversion:
        rng = np.random.default_rng(args.seed)
        lam = fam.params.lam
        extra = [complex(rng.uniform(-1, 1) * lam.real, rng.uniform(-0.3, 0.3))
                 for _ in range(args.samples)]
        ipts = [(1, u) for u in list(grid) + extra]
        _, inv_max, inv_arg = grid_scan(lambda j, u: check_inversion(fam, j, u), ipts, args.jobs)
        report["inversion"] = {"max_residual": inv_max, "argmax_u": _cpx(inv_arg[1]),
                               "points": len(ipts)}
        ok = ok and inv_max <= args.tol
    if args.n >= 4:
        lpts = [(u, v) for u in grid for v in grid]
        _, loc_max, _ = grid_scan(lambda u, v: check_locality(fam, 1, 3, u, v), lpts, args.jobs)
        report["locality"] = {"max_residual": loc_max}
        ok = ok and loc_max <= args.tol
    report["passed"] = ok
    _emit(args, report)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    rep = _build_rep(args, 2)
    fam = FaceOperatorFamily(rep, "dtl" if args.flavor == "dtl" else "dbwm")
    text = dumps_weights(export_weights(fam, parse_complex(args.u), args.form))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    rep = _build_rep(args, 2)
    fam = FaceOperatorFamily(rep, "dtl" if args.flavor == "dtl" else "dbwm")
    spec = TransferSpec(fam, args.L)
    grid = parse_grid(args.u_grid)
    if not grid:
        raise UsageError("empty spectral grid")
    rows = [(u, spectrum(spec, u, args.k)) for u in grid]
    comms = [commutator_norm(spec, a, b) for a, b in zip(grid, grid[1:])]
    summary = {"config": _config_echo(args), "command": "spectrum",
               "commutator_norms": comms, "max_commutator": max(comms, default=0.0)}
    summary["passed"] = summary["max_commutator"] <= args.tol
    csv_text = spectrum_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text)
        sys.stdout.write(json.dumps(summary, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(json.dumps(summary, sort_keys=True) + "\n")
    return EXIT_OK if summary["passed"] else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "diagrams": cmd_diagrams, "ybe": cmd_ybe,
            "export": cmd_export, "spectrum": cmd_spectrum}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.tol <= 0:
        sys.stderr.write("error: --tol must be positive\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (CubicViolation, RankError, CatalogViolation) as exc:
        # the input braid itself fails verification: a check failure, not a config error
        report = {"config": _config_echo(args), "command": args.command, "passed": False,
                  "error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "report", None) is not None:
            report["relations"] = exc.report.to_json()
        _emit(args, report)
        return EXIT_FAIL
    except (UsageError, SizeTooLarge, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE

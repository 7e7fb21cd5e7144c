"""Command-line front end: reproducible CSV/JSON runs of every analysis.

Subcommands: decompose, tradeoff, modes, snr, qkd.  Data files are pure
functions of the command line (stochastic runs take a mandatory --seed), so a
rerun is byte-identical; the run metadata (including the only timestamp)
lives in a ``<out>.manifest.json`` sidecar, never in the data file.

Exit codes: 0 success, 2 usage error, 3 numeric or convergence failure.
Set TF_FILTER_THREADS to cap the linear-algebra thread pools.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from datetime import datetime, timezone

ARTIFACT_VERSION = "0.1.0"

_ETA_GRID_START = 0.005
_ETA_GRID_STOP = 0.995
_ETA_GRID_POINTS = 199


class UsageError(Exception):
    pass


class NumericError(Exception):
    pass


def _cap_threads() -> None:
    cap = os.environ.get("TF_FILTER_THREADS")
    if cap is None:
        return
    if not cap.isdigit() or int(cap) < 1:
        raise UsageError("TF_FILTER_THREADS must be a positive integer")
    for var in (
        "OMP_NUM_THREADS",
        "OPENBLAS_NUM_THREADS",
        "MKL_NUM_THREADS",
        "NUMEXPR_NUM_THREADS",
    ):
        os.environ.setdefault(var, cap)


def parse_bt(text: str) -> float:
    """Accept a plain real or the literal form 'X/2pi'."""
    s = text.strip().lower().replace(" ", "")
    try:
        if s.endswith("/2pi"):
            return float(s[:-4]) / (2.0 * math.pi)
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse time-bandwidth product {text!r}") from None


def _fmt(x: float) -> str:
    # shortest representation that parses back to the same float, so CSV
    # consumers can re-check analytic identities at full precision
    return repr(float(x))


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _write_rows(path: str | None, header: list[str], rows: list[list[str]]) -> None:
    handle, close = _open_out(path)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            handle.close()


def _write_json(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    handle, close = _open_out(path)
    try:
        handle.write(text)
    finally:
        if close:
            handle.close()


def _write_manifest(
    out: str | None,
    command: str,
    parameters: dict,
    seed: int | None = None,
    grid_report: dict | None = None,
) -> None:
    if out is None:
        return
    manifest = {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "grid_report": grid_report or {},
        "artifact_version": ARTIFACT_VERSION,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    with open(out + ".manifest.json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_decompose(args: argparse.Namespace) -> int:
    import numpy as np

    from .gaussian import gaussian_singular_values
    from .slepian import slepian_singular_values

    bt = parse_bt(args.bt)
    if bt <= 0:
        raise UsageError("--bt must be positive")
    if args.n_modes < 1:
        raise UsageError("--n-modes must be >= 1")
    if args.filter == "gaussian":
        lam = gaussian_singular_values(bt, args.n_modes)
        backend = {"backend": "analytic-mehler"}
    else:
        if args.n_modes > 61:
            raise NumericError("prolate solver resolves mode indices up to 60 only")
        lam = slepian_singular_values(0.5 * math.pi * bt, args.n_modes)
        backend = {"backend": "legendre-prolate"}
    sq = lam**2
    cum = np.cumsum(sq)
    header = [
        "n (index)",
        "lambda_n (dimensionless)",
        "lambda_n_sq (dimensionless)",
        "cumulative_sq (dimensionless)",
    ]
    rows = [[str(n), _fmt(lam[n]), _fmt(sq[n]), _fmt(cum[n])] for n in range(args.n_modes)]
    _write_rows(args.out, header, rows)
    _write_manifest(
        args.out,
        "decompose",
        {"filter": args.filter, "bt": args.bt, "n_modes": args.n_modes},
        grid_report=backend,
    )
    return 0


def cmd_tradeoff(args: argparse.Namespace) -> int:
    import numpy as np

    from .gaussian import gaussian_tradeoff
    from .slepian import slepian_tradeoff

    bt_min = parse_bt(args.bt_min)
    bt_max = parse_bt(args.bt_max)
    if bt_min <= 0 or bt_max < bt_min:
        raise UsageError("need 0 < --bt-min <= --bt-max")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    bts = np.geomspace(bt_min, bt_max, args.points)
    if args.filter == "gaussian":
        eta, xi = gaussian_tradeoff(bts)
    else:
        eta, xi = slepian_tradeoff(bts)
    eta = np.atleast_1d(eta)
    xi = np.atleast_1d(xi)
    header = [
        "family",
        "bt (dimensionless)",
        "eta (dimensionless)",
        "xi (dimensionless)",
        "selectivity (dimensionless)",
    ]
    rows = [
        [args.filter, _fmt(bts[i]), _fmt(eta[i]), _fmt(xi[i]), _fmt(eta[i] * xi[i])]
        for i in range(len(bts))
    ]
    rows.append(["qpg_reference", "", _fmt(0.99), _fmt(0.98), _fmt(0.99 * 0.98)])
    _write_rows(args.out, header, rows)
    _write_manifest(
        args.out,
        "tradeoff",
        {
            "filter": args.filter,
            "bt_min": args.bt_min,
            "bt_max": args.bt_max,
            "points": args.points,
        },
        grid_report={"spacing": "log", "includes": "qpg_reference row"},
    )
    return 0


def cmd_modes(args: argparse.Namespace) -> int:
    import numpy as np

    from .core import Domain, SampledAxis
    from .gaussian import gaussian_sif, hermite_gaussian_mode_set
    from .slepian import pswf_solve_legendre, slepian_filter_modes

    n = args.mode
    if n < 0:
        raise UsageError("--mode must be >= 0")
    if n > 60:
        raise NumericError("mode index above 60 is out of the solvers' numeric range")
    if args.filter == "gaussian":
        if args.c is not None:
            raise UsageError("--c applies to the slepian family; use --bt for gaussian")
        if args.bt is None:
            raise UsageError("gaussian modes need --bt")
        bt = parse_bt(args.bt)
        if bt <= 0:
            raise UsageError("--bt must be positive")
        spec = gaussian_sif(bt, 1.0)
        scale_w = spec.alpha if args.which == "input" else spec.beta
        half = (math.sqrt(2.0 * n + 1.0) + 6.0) / scale_w
        count = 4097
        axis = SampledAxis(-half, 2.0 * half / (count - 1), count, Domain.TIME)
        mode = hermite_gaussian_mode_set(spec, axis, n + 1, args.which)[n]
        t_unit = "s"
        amp_unit = "1/sqrt(s)"
        grid = {"axis": {"start": axis.start, "step": axis.step, "count": axis.count}}
    else:
        if (args.c is None) == (args.bt is None):
            raise UsageError("slepian modes need exactly one of --c or --bt")
        c = args.c if args.c is not None else 0.5 * math.pi * parse_bt(args.bt)
        if c <= 0:
            raise UsageError("prolate parameter must be positive")
        try:
            sol = pswf_solve_legendre(c, n)
            phi_in, psi_out, _ = slepian_filter_modes(sol, n)
        except ValueError as exc:
            raise NumericError(str(exc)) from exc
        mode = phi_in if args.which == "input" else psi_out
        t_unit = "gate half-widths"
        amp_unit = "dimensionless"
        grid = {
            "axis": {
                "start": mode.axis.start,
                "step": mode.axis.step,
                "count": mode.axis.count,
            },
            "normalization": "gate interval mapped to [-1, 1]",
        }
    pts = mode.axis.points
    vals = np.asarray(mode.values)
    header = [f"t ({t_unit})", f"re ({amp_unit})", f"im ({amp_unit})"]
    rows = [
        [_fmt(pts[i]), _fmt(vals[i].real), _fmt(vals[i].imag)] for i in range(len(pts))
    ]
    _write_rows(args.out, header, rows)
    _write_manifest(
        args.out,
        "modes",
        {
            "filter": args.filter,
            "bt": args.bt,
            "c": args.c,
            "mode": n,
            "which": args.which,
        },
        grid_report=grid,
    )
    return 0


def _gaussian_snr_setup(bt: float):
    import numpy as np

    from .core import Domain, SampledAxis
    from .gaussian import gaussian_sif, gaussian_tradeoff, hermite_gaussian_mode_set

    spec = gaussian_sif(bt, 1.0)
    dt = min(1.0 / (12.0 * bt), 1.0 / 12.0)
    gate_reach = spec.temporal.temporal_support(1e-12)
    mode_reach = 6.0 / min(spec.alpha, spec.beta)
    half = max(gate_reach, mode_reach) + 1.0
    count = 1 << max(10, int(np.ceil(np.log2(2.0 * half / dt))))
    axis = SampledAxis(-dt * (count // 2), dt, count, Domain.TIME)
    mode = hermite_gaussian_mode_set(spec, axis, 1, "input")[0]
    _, xi = gaussian_tradeoff(bt)
    return spec, axis, mode, xi


def _slepian_snr_setup(bt: float):
    import numpy as np

    from .core import Domain, SampledAxis, StageOrder
    from .slepian import rectangular_filter_modes, rectangular_sif, slepian_tradeoff

    spec = rectangular_sif(bt, 1.0, order=StageOrder.TIME_FIRST)
    # brick-wall edges quantize plain Riemann sums; put the gate edge and the
    # band edge exactly mid-cell so the discrete T and B sums are exact
    j = max(60, int(np.ceil(5.0 * bt)))
    dt = 1.0 / (2 * j + 1)
    band_cells = max(5, 2 * int(np.ceil(2.0 * bt)) + 1)
    count = int(round(band_cells * (2 * j + 1) / bt))
    axis = SampledAxis(-dt * (count // 2), dt, count, Domain.TIME)
    mode = rectangular_filter_modes(spec, axis, 1, "input")[0]
    _, xi = slepian_tradeoff(bt)
    return spec, axis, mode, xi


def cmd_snr(args: argparse.Namespace) -> int:
    from .core import ResolutionError, SampledSignal
    from .metrics import analytic_snr
    from .noisesim import NoiseEnsembleConfig, run_ensemble

    bt = parse_bt(args.bt)
    if bt <= 0:
        raise UsageError("--bt must be positive")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.signal_energy < 0 or args.noise_psd < 0:
        raise UsageError("energies must be nonnegative")
    if args.filter == "gaussian":
        spec, axis, mode, xi = _gaussian_snr_setup(bt)
    else:
        spec, axis, mode, xi = _slepian_snr_setup(bt)
    unit_mode = mode.normalized()
    cfg = NoiseEnsembleConfig(
        noise_psd=args.noise_psd,
        signal_energy=args.signal_energy,
        signal_mode=unit_mode,
        trials=args.trials,
        seed=args.seed,
    )
    try:
        report = run_ensemble(cfg, spec)
    except ResolutionError as exc:
        raise NumericError(str(exc)) from exc
    payload = {
        "filter": args.filter,
        "bt": bt,
        "signal_energy": args.signal_energy,
        "noise_psd": args.noise_psd,
        "empirical": report.as_dict(),
        "snr_analytic": analytic_snr(args.signal_energy, args.noise_psd, xi),
        "xi_analytic": xi,
    }
    _write_json(args.out, payload)
    _write_manifest(
        args.out,
        "snr",
        {
            "filter": args.filter,
            "bt": args.bt,
            "signal_energy": args.signal_energy,
            "noise_psd": args.noise_psd,
            "trials": args.trials,
        },
        seed=args.seed,
        grid_report={"time_axis": {"start": axis.start, "step": axis.step, "count": axis.count}},
    )
    return 0


def _qkd_families(token: str):
    from .qkd import FilterCharacteristic

    if token == "gaussian":
        return [("gaussian", FilterCharacteristic.gaussian())]
    if token == "slepian":
        return [("slepian", FilterCharacteristic.slepian())]
    if token.startswith("point:"):
        body = token[len("point:") :]
        try:
            eta_s, xi_s = body.split(",")
            eta, xi = float(eta_s), float(xi_s)
        except ValueError:
            raise UsageError("point filter must look like point:0.99,0.98") from None
        try:
            fc = FilterCharacteristic.fixed_point(eta, xi)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return [(f"point_{_fmt(eta)}_{_fmt(xi)}", fc)]
    if token == "all":
        return (
            _qkd_families("gaussian")
            + _qkd_families("slepian")
            + _qkd_families("point:0.99,0.98")
            + _qkd_families("point:0.9999,0.9999")
        )
    raise UsageError(f"unknown filter family {token!r}")


def cmd_qkd(args: argparse.Namespace) -> int:
    import numpy as np

    from .qkd import (
        CharacteristicKind,
        normalized_key_rate,
        optimize_over_efficiency,
    )

    if args.ny_min < 0 or args.ny_max < args.ny_min:
        raise UsageError("need 0 <= --ny-min <= --ny-max")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    families = _qkd_families(args.filter)
    if args.ny_min > 0:
        ny_values = np.geomspace(args.ny_min, args.ny_max, args.points)
        spacing = "log"
    else:
        ny_values = np.linspace(args.ny_min, args.ny_max, args.points)
        spacing = "linear"

    rate_unit = "rate (normalized to R_S*tau_ch^2)"
    rows: list[list[str]] = []
    with np.errstate(divide="ignore"):
        if args.optimize:
            header = [
                "family",
                "n_y (dimensionless)",
                "eta_star (dimensionless)",
                f"{rate_unit.replace('rate', 'rate_star')}",
                "log10_rate_star (dimensionless)",
                "no_key (0 or 1)",
            ]
            for label, fc in families:
                for ny in ny_values:
                    if fc.kind is CharacteristicKind.FIXED_POINT:
                        rate = normalized_key_rate(fc.eta_point, fc.xi_point, float(ny))
                        eta_star, no_key = fc.eta_point, rate == 0.0
                    else:
                        res = optimize_over_efficiency(fc, float(ny))
                        eta_star, rate, no_key = res.eta, res.rate, res.no_key
                    rows.append(
                        [
                            label,
                            _fmt(float(ny)),
                            _fmt(eta_star),
                            _fmt(rate),
                            _fmt(float(np.log10(rate)) if rate > 0 else float("-inf")),
                            "1" if no_key else "0",
                        ]
                    )
        else:
            header = [
                "family",
                "n_y (dimensionless)",
                "eta (dimensionless)",
                "xi (dimensionless)",
                rate_unit,
                "log10_rate (dimensionless)",
            ]
            base_grid = np.linspace(_ETA_GRID_START, _ETA_GRID_STOP, _ETA_GRID_POINTS)
            for label, fc in families:
                if fc.kind is CharacteristicKind.FIXED_POINT:
                    etas = np.array([fc.eta_point])
                else:
                    lo, hi = fc.domain()
                    etas = base_grid[(base_grid >= lo) & (base_grid <= hi)]
                xis = np.atleast_1d(fc.xi_of(etas))
                for ny in ny_values:
                    rates = np.atleast_1d(normalized_key_rate(etas, xis, float(ny)))
                    logs = np.where(rates > 0, np.log10(np.where(rates > 0, rates, 1.0)), -np.inf)
                    for i in range(len(etas)):
                        rows.append(
                            [
                                label,
                                _fmt(float(ny)),
                                _fmt(etas[i]),
                                _fmt(xis[i]),
                                _fmt(rates[i]),
                                _fmt(logs[i]),
                            ]
                        )
    _write_rows(args.out, header, rows)
    _write_manifest(
        args.out,
        "qkd",
        {
            "filter": args.filter,
            "ny_min": args.ny_min,
            "ny_max": args.ny_max,
            "points": args.points,
            "optimize": bool(args.optimize),
        },
        grid_report={"ny_spacing": spacing, "eta_grid_points": _ETA_GRID_POINTS},
    )
    return 0


# ---------------------------------------------------------------------------
# parser / dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tffilter",
        description="Schmidt-mode analysis of time-frequency filters",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="singular values of a filter family")
    p.add_argument("--filter", choices=("gaussian", "slepian"), required=True)
    p.add_argument("--bt", required=True, help="time-bandwidth product (real or 'X/2pi')")
    p.add_argument("--n-modes", type=int, default=20)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("tradeoff", help="efficiency vs discriminativity sweep")
    p.add_argument("--filter", choices=("gaussian", "slepian"), required=True)
    p.add_argument("--bt-min", required=True)
    p.add_argument("--bt-max", required=True)
    p.add_argument("--points", type=int, default=60)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("modes", help="sampled Schmidt mode profiles")
    p.add_argument("--filter", choices=("gaussian", "slepian"), required=True)
    p.add_argument("--bt")
    p.add_argument("--c", type=float, help="prolate parameter (slepian only)")
    p.add_argument("--mode", type=int, default=0)
    p.add_argument("--which", choices=("input", "output"), default="input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_modes)

    p = sub.add_parser("snr", help="Monte Carlo signal-to-noise check")
    p.add_argument("--filter", choices=("gaussian", "slepian"), required=True)
    p.add_argument("--bt", required=True)
    p.add_argument("--signal-energy", type=float, default=1.0)
    p.add_argument("--noise-psd", type=float, default=0.1)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_snr)

    p = sub.add_parser("qkd", help="BBM92 key rates over a noise sweep")
    p.add_argument(
        "--filter",
        required=True,
        help="gaussian | slepian | point:ETA,XI | all",
    )
    p.add_argument("--ny-min", type=float, required=True)
    p.add_argument("--ny-max", type=float, required=True)
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_qkd)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        _cap_threads()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001 - map library numerics to exit 3
        from .core import ConvergenceError, ResolutionError, TruncationError

        if isinstance(exc, (ConvergenceError, ResolutionError, TruncationError)):
            print(f"numeric failure: {exc}", file=sys.stderr)
            return 3
        raise


if __name__ == "__main__":
    sys.exit(main())
"""Command-line interface: ``innerzrp {fit,sweep,poles,validate,baseline}``.

Exit codes: 0 success, 1 configuration error, 2 model-construction error,
3 validation failures present.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import baselines
from .config import ModelConfig, load_config, load_document
from .errors import ConfigError, ModelError
from .fitting import Model, PhysicalObservables, build_model
from .model import InnerSpectrum, ReducedParameters, laurent_residuals
from .scattering import sweep
from .spectral import PoleRecord, UnphysicalPoleWarning, pole_roots, pole_zero_report
from .validation import corrupt_weights, validate

EXIT_OK, EXIT_CONFIG, EXIT_MODEL, EXIT_VALIDATION = 0, 1, 2, 3
CSV_HEADER = ("k", "F", "delta", "Re_S", "Im_S", "sigma")


class _Parser(argparse.ArgumentParser):
    # usage errors are configuration errors, not model errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _spectrum_arg(text: str) -> list[float]:
    text = text.strip()
    if not text:
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"spectrum must be comma-separated numbers, got {text!r}") from None


def _cplx(z: complex) -> list[float]:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="JSON model document ('-' for stdin)")
    p.add_argument("--mode", choices=("observables", "reduced"))
    p.add_argument("--a", type=float, help="scattering length")
    p.add_argument("--r0", type=float, help="effective radius")
    p.add_argument("--spectrum", type=_spectrum_arg, metavar="K1,K2,...", help="resonance wave numbers")
    p.add_argument("--a0", type=float, help="bare scattering length (reduced mode)")
    p.add_argument("--alpha", type=float, help="dimensionless coupling (reduced mode)")
    p.add_argument("--k0", type=float, help="reference wave number (default 1/|a0|)")
    p.add_argument("--energy-scale", type=float, dest="energy_scale", help="hbar^2/2mu in user units")


def _output_flags(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=default_format)


def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kmin", type=float, default=0.0)
    p.add_argument("--kmax", type=float, default=10.0)
    p.add_argument("--num", type=int, default=201)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="innerzrp", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", help="reduced and extension parameters as JSON", allow_abbrev=False)
    _model_flags(p)
    _output_flags(p, "json")

    p = sub.add_parser("sweep", help="F, delta, S and sigma on a real k grid", allow_abbrev=False)
    _model_flags(p)
    _grid_flags(p)
    _output_flags(p, "csv")

    p = sub.add_parser("poles", help="classified S-matrix poles and zeros", allow_abbrev=False)
    _model_flags(p)
    _output_flags(p, "json")

    p = sub.add_parser("validate", help="run the consistency checks on one model", allow_abbrev=False)
    _model_flags(p)
    p.add_argument("--kmax", type=float, default=None, help="upper end of the check grid")
    p.add_argument("--perturb-weights", type=float, default=None, metavar="FRACTION",
                   help="scale P_s by 1 +- FRACTION to demonstrate failing checks")
    _output_flags(p, "json")

    p = sub.add_parser("baseline", help="Wigner or delta-sequence reference values", allow_abbrev=False)
    _model_flags(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--wigner", action="store_true", help="4 pi a^2 / (1 + a^2 k^2) against the model")
    which.add_argument("--delta", action="store_true", help="square-well delta sequence as eps -> 0")
    sign = p.add_mutually_exclusive_group()
    sign.add_argument("--attractive", action="store_true")
    sign.add_argument("--repulsive", action="store_true")
    p.add_argument("--eps-grid", metavar="MIN:MAX[:NUM]", default="1e-6:1e-1",
                   help="log grid of eps; NUM defaults to a grid resolving tan(x) at MIN")
    _grid_flags(p)
    _output_flags(p, "json")
    return parser


def _config(args) -> ModelConfig:
    return load_config(
        args.config,
        mode=args.mode,
        a=args.a,
        r0=args.r0,
        spectrum_k=args.spectrum,
        a0=args.a0,
        alpha=args.alpha,
        k0=args.k0,
        energy_scale=args.energy_scale,
    )


def model_from_config(cfg: ModelConfig) -> Model:
    spectrum = InnerSpectrum(cfg.spectrum_k)
    if cfg.mode == "observables":
        return build_model(PhysicalObservables(cfg.a, cfg.r0, spectrum), k0=cfg.k0)
    return build_model(ReducedParameters.from_bare(cfg.a0, cfg.alpha, spectrum.n), spectrum, k0=cfg.k0)


def fit_report(cfg: ModelConfig, model: Model) -> dict:
    ext = model.extension
    reduced_cfg = ModelConfig(
        mode="reduced",
        spectrum_k=model.spectrum.ks,
        a0=model.reduced.a0,
        alpha=model.reduced.alpha,
        k0=ext.k0,
        energy_scale=cfg.energy_scale,
    )
    diagnostics = {"e_norm": None, "sign_r0_equals_sign_Lambda": None, "gamma01_abs2_positive": None,
                   "laurent_max_residual": None}
    if model.n:
        diagnostics = {
            "e_norm": float(ext.e_norm),
            "sign_r0_equals_sign_Lambda": (model.observables.r0 > 0) == (ext.Lambda > 0),
            "gamma01_abs2_positive": bool(ext.gamma01_abs2 > 0),
            "laurent_max_residual": float(np.max(laurent_residuals(model.spectrum, ext.P, ext.gamma11, ext.Lambda))),
        }
    return {
        "input": cfg.to_dict(),
        "config": reduced_cfg.to_dict(),
        "observables": {"a": model.observables.a, "r0": model.observables.r0, "spectrum_k": list(model.spectrum.ks)},
        "reduced": {
            "a0": model.reduced.a0,
            "alpha": model.reduced.alpha,
            "epsilon": model.reduced.epsilon,
            "gamma_coef": model.reduced.gamma_coef,
        },
        "extension": ext.to_dict(),
        "diagnostics": diagnostics,
    }


def _record_dict(r: PoleRecord) -> dict:
    return {
        "k": _cplx(r.k),
        "kappa": _cplx(r.kappa),
        "kind": r.kind.value,
        "E": _cplx(r.E),
        "E_prime": r.E_prime,
        "Gamma_n": r.Gamma_n,
        "Gamma_k2": r.Gamma_k2,
        "multiplicity": r.multiplicity,
        "partner": None if r.partner is None else _cplx(r.partner),
        "converged": r.converged,
    }


def poles_report(cfg: ModelConfig, model: Model) -> dict:
    report = pole_zero_report(model.reduced, model.spectrum, cfg.energy_scale)
    roots = pole_roots(model.reduced, model.spectrum)
    return {
        "poles": [_record_dict(r) for r in report.poles],
        "zeros": [_cplx(z) for z in report.zeros],
        "symmetry_residuals": [float(v) for v in report.symmetry_residuals],
        "root_residuals": [{"k": _cplx(r.k), "residual": r.residual, "converged": r.converged} for r in roots],
    }


def _fmt(x: float) -> str:
    return f"{x + 0.0:.16e}"


def sweep_csv(model: Model, k: np.ndarray) -> str:
    sw = sweep(k, model.reduced, model.spectrum)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in zip(sw.k, sw.F, sw.delta, sw.S.real, sw.S.imag, sw.sigma):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def sweep_json(model: Model, k: np.ndarray) -> dict:
    sw = sweep(k, model.reduced, model.spectrum)
    return {name: [float(v) for v in col] for name, col in
            zip(CSV_HEADER, (sw.k, sw.F, sw.delta, sw.S.real, sw.S.imag, sw.sigma))}


def _k_grid(args) -> np.ndarray:
    if not (0 <= args.kmin < args.kmax) or not math.isfinite(args.kmax):
        raise ConfigError(f"need 0 <= kmin < kmax, got kmin={args.kmin}, kmax={args.kmax}")
    if args.num < 2:
        raise ConfigError(f"need num >= 2, got {args.num}")
    return np.linspace(args.kmin, args.kmax, args.num)


def _eps_grid(text: str) -> tuple[float, float, int | None]:
    parts = text.split(":")
    try:
        if len(parts) == 2:
            lo, hi, num = float(parts[0]), float(parts[1]), None
        elif len(parts) == 3:
            lo, hi, num = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            raise ValueError
    except ValueError:
        raise ConfigError(f"--eps-grid expects MIN:MAX[:NUM], got {text!r}") from None
    if not (0 < lo < hi) or (num is not None and num < 2):
        raise ConfigError(f"--eps-grid needs 0 < MIN < MAX and NUM >= 2, got {text!r}")
    return lo, hi, num


def _baseline(args) -> dict | str:
    data = load_document(args.config)
    if "config" in data and isinstance(data["config"], dict):
        data = data["config"]
    a = args.a if args.a is not None else data.get("a")
    r0 = args.r0 if args.r0 is not None else data.get("r0")
    if a is None:
        raise ConfigError("baseline needs the scattering length a")
    if args.wigner:
        k = _k_grid(args)
        sigma_w = baselines.wigner_sigma(a, k)
        cfg = ModelConfig(mode="observables", a=float(a), r0=0.0)
        model = model_from_config(cfg)
        sigma_m = sweep(k, model.reduced, model.spectrum).sigma
        dev = float(np.max(np.abs(sigma_m - sigma_w) / np.maximum(sigma_w, np.finfo(float).tiny)))
        if args.format == "csv":
            lines = ["k,sigma_wigner,sigma_model"] + [f"{_fmt(x)},{_fmt(w)},{_fmt(m)}" for x, w, m in zip(k, sigma_w, sigma_m)]
            return "\n".join(lines) + "\n"
        return {"baseline": "wigner", "a": float(a), "k": k.tolist(), "sigma_wigner": sigma_w.tolist(),
                "sigma_model": sigma_m.tolist(), "max_relative_deviation": dev}
    if r0 is None:
        raise ConfigError("the delta sequence needs the range scale r0")
    attractive = args.attractive if (args.attractive or args.repulsive) else float(a) < 0
    lo, hi, num = _eps_grid(args.eps_grid)
    try:
        result = baselines.eps_sweep(float(a), float(r0), attractive, lo, hi, num)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if args.format == "csv":
        rows = ["eps,ratio,sigma"]
        for e, rat in zip(result.eps, result.ratio):
            rows.append(f"{_fmt(e)},{_fmt(rat)},{_fmt(4 * math.pi * (e * float(r0)) ** 2 * rat)}")
        return "\n".join(rows) + "\n"
    finite = np.isfinite(result.ratio)
    return {
        "baseline": "delta",
        "a": float(a),
        "r0": float(r0),
        "attractive": attractive,
        "eps_min": lo,
        "eps_max": hi,
        "num": int(result.eps.size),
        "ratio_at_eps_min": float(result.ratio[0]),
        "ratio_max": float(np.max(result.ratio[finite])),
        "ratio_min": float(np.min(result.ratio[finite])),
        "last_decade_spread": result.spread,
        "last_decade_mean": result.mean,
        "converged": result.converged,
    }


def _emit(payload, out: str | None) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(args) -> int:
    if args.command == "baseline":
        _emit(_baseline(args), args.out)
        return EXIT_OK
    cfg = _config(args)
    model = model_from_config(cfg)
    if args.command == "fit":
        _emit(fit_report(cfg, model), args.out)
    elif args.command == "sweep":
        k = _k_grid(args)
        _emit(sweep_csv(model, k) if args.format == "csv" else sweep_json(model, k), args.out)
    elif args.command == "poles":
        _emit(poles_report(cfg, model), args.out)
    elif args.command == "validate":
        if args.perturb_weights is not None:
            if model.n == 0:
                raise ConfigError("--perturb-weights needs an inner spectrum")
            model = corrupt_weights(model, args.perturb_weights)
        report = validate(model, args.kmax)
        _emit(report.to_dict(), args.out)
        return EXIT_OK if report.passed else EXIT_VALIDATION
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnphysicalPoleWarning)
            return run(args)
    except ConfigError as exc:
        print(f"innerzrp: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ModelError as exc:
        print(f"innerzrp: model error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())

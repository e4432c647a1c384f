"""Command-line front end: ``lcdwt transform|wavelet|verify|presets``.

Exit codes: 0 success, 1 input parse error, 2 configuration error,
3 numerical error (including a non-admissible wavelet), 4 verification FAIL.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import lcdt, wavelet as wv
from .config import ConfigError, PresetCatalog, RunConfig
from .errors import (AdmissibilityError, DomainError, LCDWTError, NumericalError, ParameterError,
                     RangeError)
from .fileio import (ParseError, peek_header, read_coefficients, read_signal, write_coefficients,
                     write_magnitude_matrix, write_signal, COEFF_HEADER)
from .quadrature import WeightedMeasure
from .verify import SUITES, run_suite

EXIT_OK, EXIT_PARSE, EXIT_CONFIG, EXIT_NUMERIC, EXIT_FAIL = 0, 1, 2, 3, 4


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON run configuration")
    p.add_argument("--mu", type=float, help="Dunkl order (>= -1/2)")
    p.add_argument("--matrix", help="a,b,c,d with ad - bc = 1")
    p.add_argument("--preset", help="named (mu, M) pair; see `presets`")
    p.add_argument("--theta", type=float, help="angle for the rotation presets")
    p.add_argument("--seed", type=int, help="random seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcdwt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="forward or inverse LCDT of a signal file")
    _common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--direction", choices=["forward", "inverse"], default="forward")
    p.add_argument("--resample", action="store_true", help="interpolate input onto the grid")

    p = sub.add_parser("wavelet", help="wavelet analysis, synthesis or admissibility")
    _common(p)
    p.add_argument("--mode", choices=["analyze", "synthesize", "admissibility"], default="analyze")
    p.add_argument("--wavelet", help="preset name or signal file for the mother wavelet")
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--resample", action="store_true")
    p.add_argument("--emit-plot-data", metavar="PATH", help="write |coefficients| as a CSV matrix")

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    p.add_argument("--output", help="write structured JSON records")

    p = sub.add_parser("presets", help="list the preset taxonomy")
    p.add_argument("--theta", type=float, default=None)
    return parser


def load_config(args) -> RunConfig:
    data = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    if args.mu is not None:
        data["mu"] = args.mu
    if args.matrix is not None:
        data["matrix"] = args.matrix
    if args.preset is not None:
        data["preset"] = args.preset
        data.pop("matrix", None) if args.matrix is None else None
    if args.theta is not None:
        data["theta"] = args.theta
    if args.seed is not None:
        data["seed"] = args.seed
    if getattr(args, "wavelet", None):
        data["wavelet"] = args.wavelet
    if data.get("preset") == "classical-fourier" and "mu" not in data:
        data["mu"] = -0.5
    return RunConfig.from_dict(data)


def _measure(cfg: RunConfig) -> WeightedMeasure:
    return WeightedMeasure.build(cfg.mu, cfg.grid.build())


def _mother(cfg: RunConfig, measure, resample=False) -> wv.MotherWavelet:
    if cfg.wavelet in wv.PRESETS:
        return wv.preset_wavelet(cfg.wavelet, measure)
    if os.path.exists(cfg.wavelet):
        return wv.MotherWavelet(read_signal(cfg.wavelet, measure, resample), cfg.wavelet)
    raise ConfigError(f"wavelet {cfg.wavelet!r} is neither a preset {sorted(wv.PRESETS)} "
                      f"nor a file")


def _need(args, *names):
    for n in names:
        if not getattr(args, n):
            raise ConfigError(f"--{n.replace('_', '-')} is required for this command")


def cmd_transform(args, out) -> int:
    cfg = load_config(args)
    M = cfg.resolved_matrix()
    grid = cfg.grid.build()
    spec_grid = lcdt.spectral_grid_for(grid, M)
    if args.direction == "forward":
        f = read_signal(args.input, WeightedMeasure.build(cfg.mu, grid), args.resample)
        lcdt.warn_if_underresolved(M, f, spec_grid.nodes)
        res = lcdt.forward(M, cfg.mu, f, spec_grid)
        back = lcdt.inverse(M, cfg.mu, res, grid)
    else:
        F = read_signal(args.input, WeightedMeasure.build(cfg.mu, spec_grid), args.resample)
        spectrum = lcdt.Spectrum(F.measure, F.values, M, grid)
        res = lcdt.inverse(M, cfg.mu, spectrum, grid)
        back = lcdt.forward(M, cfg.mu, res, spec_grid)
        f = F
    _finite(res.values)
    write_signal(args.output, res)
    resid = (back - f).norm(2) / max(f.norm(2), 1e-300)
    print(f"transform direction={args.direction} M={_label(M)} mu={cfg.mu:g} "
          f"nodes={res.nodes.size} norm_in={f.norm(2):.12e} norm_out={res.norm(2):.12e} "
          f"roundtrip_residual={resid:.6e}", file=out)
    return EXIT_OK


def _label(M) -> str:
    return ",".join(f"{v:.6g}" for v in M.as_tuple())


def _finite(values):
    if not np.all(np.isfinite(values)):
        raise NumericalError("non-finite output values")


def cmd_wavelet(args, out) -> int:
    cfg = load_config(args)
    M = cfg.resolved_matrix()
    m = _measure(cfg)
    psi = _mother(cfg, m, args.resample)
    if args.mode == "admissibility":
        C = psi.admissibility(M)
        print(f"admissibility wavelet={psi.name} M={_label(M)} mu={cfg.mu:g} C={C:.12e} "
              f"plancherel_constant={psi.plancherel_constant(M):.12e}", file=out)
        return EXIT_OK
    _need(args, "input")
    scales = cfg.scales.build()
    if args.mode == "analyze":
        _need(args, "output")
        f = read_signal(args.input, m, args.resample)
        psi.admissibility(M)
        fld = wv.analyze_spectral(M, cfg.mu, f, psi, scales)
        _finite(fld.values)
        write_coefficients(args.output, scales.nodes, m.nodes, fld.values)
        if args.emit_plot_data:
            write_magnitude_matrix(args.emit_plot_data, scales.nodes, m.nodes, fld.values)
        print(f"analyze wavelet={psi.name} M={_label(M)} mu={cfg.mu:g} scales={scales.count} "
              f"positions={m.nodes.size} energy={fld.energy():.12e}", file=out)
        return EXIT_OK
    # synthesize: from a coefficient file, or round trip from a signal file
    psi.admissibility(M)
    if peek_header(args.input) == COEFF_HEADER:
        _need(args, "output")
        vals = read_coefficients(args.input, scales.nodes, m.nodes)
        fld = wv.CoefficientField(scales, m, vals, M, cfg.mu, True, psi.name)
        g = wv.synthesize(M, cfg.mu, fld, psi)
        _finite(g.values)
        write_signal(args.output, g)
        print(f"synthesize wavelet={psi.name} M={_label(M)} mu={cfg.mu:g} "
              f"norm={g.norm(2):.12e}", file=out)
        return EXIT_OK
    f = read_signal(args.input, m, args.resample)
    fld = wv.analyze_spectral(M, cfg.mu, f, psi, scales)
    g = wv.synthesize(M, cfg.mu, fld, psi)
    _finite(g.values)
    if args.output:
        write_signal(args.output, g)
    resid = (g - f).norm(2) / max(f.norm(2), 1e-300)
    print(f"synthesize wavelet={psi.name} M={_label(M)} mu={cfg.mu:g} "
          f"residual={resid:.6e}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    cfg = load_config(args)
    reports = run_suite(args.suite, cfg)
    failed = 0
    for r in reports:
        print(r.line(), file=out)
        failed += not r.passed
    print(f"summary suite={args.suite} seed={cfg.seed} checks={len(reports)} failed={failed}",
          file=out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump([r.to_record() for r in reports], fh, indent=1, sort_keys=True)
            fh.write("\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_presets(args, out) -> int:
    theta = np.pi / 4 if args.theta is None else args.theta
    for line in PresetCatalog.listing(theta):
        print(line, file=out)
    return EXIT_OK


COMMANDS = {"transform": cmd_transform, "wavelet": cmd_wavelet, "verify": cmd_verify,
            "presets": cmd_presets}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args, out)
    except ParseError as exc:
        print(f"lcdwt: parse error: {exc}", file=err)
        return EXIT_PARSE
    except AdmissibilityError as exc:
        print(f"lcdwt: numerical error: {exc}", file=err)
        return EXIT_NUMERIC
    except (NumericalError, DomainError, RangeError, FloatingPointError) as exc:
        print(f"lcdwt: numerical error: {exc}", file=err)
        return EXIT_NUMERIC
    except (ConfigError, ParameterError) as exc:
        print(f"lcdwt: config error: {exc}", file=err)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"lcdwt: config error: {exc}", file=err)
        return EXIT_CONFIG
    except LCDWTError as exc:
        print(f"lcdwt: numerical error: {exc}", file=err)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``funksphere {forward,reconstruct,hodge,selftest}``.

Exit codes: 0 success, 1 accuracy or invariant failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from .coeffs import ScalarCoeffs
from .config import ConfigError, ExperimentConfig, add_noise, make_phantom
from .exceptions import FunkSphereError, InconsistentDataWarning
from .grid import make_grid, synthesis
from .io import (read_shcoeff, read_vshcoeff, write_grid_json, write_json, write_shcoeff,
                 write_vshcoeff)
from .reconstruct import (FMPair, data_residuals, forward_quadrature, forward_spectral,
                          helmholtz_hodge, hodge_oracle, reconstruct_full)
from .selftest import FAULTS, run_selftest

log = logging.getLogger("funksphere")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
HODGE_TOL = 1e-9


class UsageError(Exception):
    pass


def _load_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    phantom = getattr(args, "phantom", None)
    return cfg.with_overrides(
        n_max=getattr(args, "n_max", None), seed=getattr(args, "seed", None),
        phantom=tuple(phantom) if phantom else None,
        noise_sigma=getattr(args, "noise_sigma", None), forward=getattr(args, "forward", None),
        output_dir=getattr(args, "output_dir", None), cutoff=getattr(args, "cutoff", None))


def _require_file(path) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {p}")
    return p


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = cfg.out_path
    out.mkdir(parents=True, exist_ok=True)
    return out


def _errors(est: ScalarCoeffs, truth: ScalarCoeffs) -> dict:
    if est.n_max != truth.n_max:
        n = max(est.n_max, truth.n_max)
        est, truth = est.resized(n), truth.resized(n)
    diff = est - truth
    grid = make_grid(diff.n_max)
    return {"l2": diff.norm(), "linf": float(np.max(np.abs(synthesis(diff, grid).values))),
            "max_coeff": diff.max_abs()}


def cmd_forward(args) -> int:
    cfg = _load_config(args).validate()
    rng = np.random.default_rng(cfg.seed)
    f = make_phantom(cfg, rng)
    t0 = time.perf_counter()
    pair = forward_spectral(f) if cfg.forward == "spectral" else forward_quadrature(f)
    g, h = add_noise(pair.g, pair.h, cfg.noise_sigma, rng)
    out = _out_dir(cfg)
    write_shcoeff(out / "g.shcoeff", g)
    write_vshcoeff(out / "h.vshcoeff", h)
    write_shcoeff(out / "f_true.shcoeff", f)
    write_grid_json(out / "grid.json", make_grid(cfg.n_max))
    write_json(out / "config.json", cfg.to_json_dict())
    log.info("forward (%s) at N_max=%d in %.3fs -> %s", cfg.forward, cfg.n_max,
             time.perf_counter() - t0, out)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    cfg = _load_config(args)
    g = read_shcoeff(_require_file(args.g_file))
    h = read_vshcoeff(_require_file(args.h_file))
    truth = read_shcoeff(_require_file(args.truth)) if args.truth else None
    pair = FMPair(g, h)
    if cfg.cutoff is not None and not 0 <= cfg.cutoff <= pair.n_max:
        raise ConfigError("cutoff must lie in [0, n_max]")
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", InconsistentDataWarning)
        f = reconstruct_full(pair, cutoff=cfg.cutoff)
    elapsed = time.perf_counter() - t0
    report = {
        "n_max": pair.n_max, "cutoff": cfg.cutoff, "seconds": elapsed,
        "residuals": data_residuals(f, pair),
        "warnings": [str(w.message) for w in caught],
    }
    if truth is not None:
        report["errors"] = _errors(f, truth)
        log.info("L2 error %.3e, Linf error %.3e", report["errors"]["l2"],
                 report["errors"]["linf"])
    out = _out_dir(cfg)
    write_shcoeff(out / "f.shcoeff", f)
    write_json(out / "report.json", report)
    return EXIT_OK


def cmd_hodge(args) -> int:
    cfg = _load_config(args)
    field = read_vshcoeff(_require_file(args.field_file))
    hp = helmholtz_hodge(field)
    oracle = hodge_oracle(field)
    disc = {"u": (hp.u - oracle.u).max_abs(), "v": (hp.v - oracle.v).max_abs()}
    out = _out_dir(cfg)
    write_shcoeff(out / "u.shcoeff", hp.u)
    write_shcoeff(out / "v.shcoeff", hp.v)
    write_shcoeff(out / "u_oracle.shcoeff", oracle.u)
    write_shcoeff(out / "v_oracle.shcoeff", oracle.v)
    ok = max(disc.values()) <= HODGE_TOL
    write_json(out / "report.json", {"n_max": field.n_max, "discrepancy": disc,
                                     "tolerance": HODGE_TOL, "passed": ok})
    log.info("hodge discrepancy u=%.3e v=%.3e", disc["u"], disc["v"])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args) -> int:
    cfg = _load_config(args).validate(min_n_max=0)
    faults = [args.inject_fault] if args.inject_fault else []
    report = run_selftest(cfg.n_max, cfg.seed, faults, log=print)
    out = _out_dir(cfg)
    write_json(out / "report.json", report.to_json_dict())
    if not report.passed:
        print("selftest FAILED: " + ", ".join(report.failures))
        return EXIT_FAIL
    print(f"selftest passed ({len(report.checks)} checks at N_max={cfg.n_max})")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON experiment config")
    common.add_argument("--output-dir", "-o", dest="output_dir")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="funksphere", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    fwd = sub.add_parser("forward", parents=[common], help="simulate g = Ff and h = F grad f")
    fwd.add_argument("--n-max", type=int, dest="n_max")
    fwd.add_argument("--seed", type=int)
    fwd.add_argument("--phantom", nargs="+", metavar="ARG",
                     help="random-bandlimited | harmonic N L | gaussian-bump THETA PHI WIDTH")
    fwd.add_argument("--noise-sigma", type=float, dest="noise_sigma")
    fwd.add_argument("--forward", choices=("spectral", "quadrature"))
    fwd.set_defaults(func=cmd_forward)

    rec = sub.add_parser("reconstruct", parents=[common], help="recover f from g and h")
    rec.add_argument("g_file")
    rec.add_argument("h_file")
    rec.add_argument("--truth", help="ground-truth shcoeff file for error reporting")
    rec.add_argument("--cutoff", type=int, help="truncate data above this degree")
    rec.set_defaults(func=cmd_reconstruct)

    hod = sub.add_parser("hodge", parents=[common], help="Helmholtz-Hodge potentials")
    hod.add_argument("field_file")
    hod.set_defaults(func=cmd_hodge)

    st = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    st.add_argument("--n-max", type=int, dest="n_max")
    st.add_argument("--seed", type=int)
    st.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"funksphere: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ConfigError, FunkSphereError) as exc:
        print(f"funksphere {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"funksphere {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

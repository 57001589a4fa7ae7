"""Command-line front end: spectra, wave-function samples, Green-function scans, oracle checks.

    qdeform spectrum --kind V1 --nu 2.5
    qdeform verify --kind V3 --alpha 40 --lambda 1.5 --q 0.5 --tol 1e-4
    qdeform green-scan --kind V2 --eta 1.5 --nu 7.5 --window -30:0 --format csv
    qdeform wavefunction --kind V4 --beta 1 --lambda 3.5 --level 1 --format csv

Exit codes: 0 success, 1 verification failure, 2 usage or validation error, 3 numeric failure.
Errors are written to standard error as a JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, NumericError, PoleError
from .potentials import PotentialSpec

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("spectrum", "wavefunction", "green-scan", "verify")
PARAM_FLAGS = ("nu", "eta", "lambda", "alpha", "beta", "V0", "V1", "V2", "A", "B", "C", "f", "h1")
SPEC_KEYS = ("kind", "q", "hbar", "mass")
OPTION_DEFAULTS = {"format": None, "out": None, "tol": 1e-4, "grid_points": 20000,
                   "window": None, "level": 0, "resolution": 400, "x0": None, "step": 0.01,
                   "span": None}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec: PotentialSpec
    output_format: str
    out: str | None = None
    tol: float = 1e-4
    grid_points: int = 20000
    window: tuple[float, float] | None = None
    level: int = 0
    resolution: int = 400
    x0: float | None = None
    step: float = 0.01
    span: float | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qdeform", description="q-deformed hyperbolic potentials: spectra, "
                "wave functions, Green functions and oracle verification.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON file with spec and option keys; flags override it")
    p.add_argument("--kind")
    p.add_argument("--q", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--mass", type=float)
    for name in PARAM_FLAGS:
        p.add_argument(f"--{name}", type=float, dest=f"param_{name}")
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--tol", type=float, help="verify: absolute energy tolerance")
    p.add_argument("--grid-points", type=int, dest="grid_points", help="verify: oracle grid points")
    p.add_argument("--span", type=float, help="verify: oracle half-width or half-line length")
    p.add_argument("--window", help="green-scan: energy window lo:hi")
    p.add_argument("--resolution", type=int, help="green-scan: number of energies")
    p.add_argument("--x0", type=float, help="green-scan: probe point (raw frame)")
    p.add_argument("--level", type=int, help="wavefunction: level index n")
    p.add_argument("--step", type=float, help="wavefunction: sample spacing")
    return p


def _window(text) -> tuple[float, float]:
    if isinstance(text, (list, tuple)):
        lo, hi = text
    else:
        try:
            lo, hi = (float(v) for v in str(text).split(":"))
        except ValueError:
            raise UsageError(f"--window must be lo:hi, got {text!r}") from None
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise UsageError(f"--window needs finite lo < hi, got {lo}:{hi}")
    return lo, hi


def parse_config(argv) -> RunConfig:
    """Merge the optional JSON config with the flags (flags win) and validate."""
    argv = list(argv)
    for i, tok in enumerate(argv[:-1]):
        # a window such as -5:-1 would otherwise be read as an option
        if tok == "--window":
            argv[i:i + 2] = [f"--window={argv[i + 1]}"]
            break
    args = build_parser().parse_args(argv)
    cfg: dict = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}") from None
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
    cfg = dict(cfg)
    options = {k: cfg.pop(k, v) for k, v in OPTION_DEFAULTS.items()}
    cfg.pop("command", None)
    spec_d = {k: cfg.pop(k) for k in SPEC_KEYS if k in cfg}
    params = dict(cfg.pop("params", {}))
    params.update(cfg)  # remaining keys are potential parameters
    for k in SPEC_KEYS:
        v = getattr(args, k)
        if v is not None:
            spec_d[k] = v
    for name in PARAM_FLAGS:
        v = getattr(args, f"param_{name}")
        if v is not None:
            params[name] = v
    for k in OPTION_DEFAULTS:
        v = getattr(args, k, None)
        if v is not None:
            options[k] = v
    if "kind" not in spec_d:
        raise UsageError("a potential kind is required (--kind or the config's 'kind')")
    spec = PotentialSpec.from_dict({**spec_d, "params": params})
    fmt = options["format"] or ("csv" if args.command == "verify" else "json")
    if options["tol"] <= 0:
        raise UsageError("--tol must be positive")
    if options["grid_points"] < 3:
        raise UsageError("--grid-points must be at least 3")
    if options["resolution"] < 2:
        raise UsageError("--resolution must be at least 2")
    if options["step"] <= 0:
        raise UsageError("--step must be positive")
    if options["level"] < 0:
        raise UsageError("--level must be non-negative")
    window = _window(options["window"]) if options["window"] is not None else None
    return RunConfig(args.command, spec, fmt, options["out"], float(options["tol"]),
                     int(options["grid_points"]), window, int(options["level"]),
                     int(options["resolution"]), options["x0"], float(options["step"]),
                     options["span"])


# --- commands ----------------------------------------------------------------------------

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def cmd_spectrum(cfg: RunConfig) -> tuple[str, int]:
    from .spectra import spectrum

    sp = spectrum(cfg.spec)
    if cfg.output_format == "csv":
        return sp.to_csv(), EXIT_OK
    d = sp.to_dict()
    d["spec"] = cfg.spec.to_dict()
    return _json(d), EXIT_OK


def cmd_wavefunction(cfg: RunConfig) -> tuple[str, int]:
    from .wavefun import bound_state

    st = bound_state(cfg.spec, cfg.level)
    x, psi = st.sample(cfg.step)
    if cfg.output_format == "csv":
        return _csv(["x", "psi"], ([repr(float(a)), repr(float(b))] for a, b in zip(x, psi))), EXIT_OK
    return _json({"spec": cfg.spec.to_dict(), "n": st.n, "energy": st.energy,
                  "x": x.tolist(), "psi": psi.tolist()}), EXIT_OK


def cmd_green_scan(cfg: RunConfig) -> tuple[str, int]:
    from .green import default_window, green, pole_scan, probe_points, scan_table

    window = cfg.window or default_window(cfg.spec)
    x0 = cfg.x0 if cfg.x0 is not None else probe_points(cfg.spec)[0]
    if cfg.output_format == "csv":
        return scan_table(cfg.spec, x0, window, cfg.resolution), EXIT_OK
    E = np.linspace(window[0], window[1], cfg.resolution)
    re, im = [], []
    for e in E:
        try:
            g = green(cfg.spec, x0, x0, e, check_poles=False)
            inv = 1 / g if g != 0 else complex(math.inf)
        except PoleError:
            inv = 0j
        re.append(inv.real)
        im.append(inv.imag)
    poles = pole_scan(cfg.spec, window, cfg.resolution)
    return _json({"spec": cfg.spec.to_dict(), "x0": x0, "window": list(window),
                  "E": E.tolist(), "re_invG": re, "im_invG": im, "poles": poles}), EXIT_OK


def verify_rows(spec: PotentialSpec, tol: float, grid_points: int, span=None):
    """Per-level comparison of the analytic spectrum with the Richardson-extrapolated oracle."""
    from .oracle import problem_for, refine, threshold, count_below
    from .spectra import spectrum

    E = spectrum(spec).energies
    p = problem_for(spec, grid_points, span)
    n_oracle = count_below(p.refined(2), threshold(spec))
    k = max(len(E), n_oracle)
    ext = refine(p, k).extrapolated if k else np.empty(0)
    rows = []
    for n in range(k):
        a = float(E[n]) if n < len(E) else math.nan
        o = float(ext[n]) if n < n_oracle else math.nan
        d = abs(a - o)
        rows.append({"n": n, "analytic": a, "oracle": o, "abs_diff": d,
                     "pass": bool(math.isfinite(d) and d <= tol)})
    return rows


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    rows = verify_rows(cfg.spec, cfg.tol, cfg.grid_points, cfg.span)
    ok = bool(rows) and all(r["pass"] for r in rows)
    status = EXIT_OK if ok else EXIT_VERIFY
    if cfg.output_format == "json":
        return _json({"spec": cfg.spec.to_dict(), "tol": cfg.tol, "levels": rows, "pass": ok}), status
    text = _csv(["n", "analytic", "oracle", "abs_diff", "pass"],
                ([r["n"], repr(r["analytic"]), repr(r["oracle"]), f"{r['abs_diff']:.3e}",
                  "PASS" if r["pass"] else "FAIL"] for r in rows))
    return text, status


_COMMANDS = {"spectrum": cmd_spectrum, "wavefunction": cmd_wavefunction,
             "green-scan": cmd_green_scan, "verify": cmd_verify}


def run(cfg: RunConfig) -> int:
    text, status = _COMMANDS[cfg.command](cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def _fail(code: int, kind: str, message: str) -> int:
    sys.stderr.write(_json({"error": kind, "message": message, "exit_code": code}))
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            cfg = parse_config(argv)
            return run(cfg)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except (DomainError, ContractError) as exc:
        return _fail(EXIT_USAGE, "validation", str(exc))
    except (NumericError, PoleError, ArithmeticError) as exc:
        return _fail(EXIT_NUMERIC, "numeric", str(exc))


if __name__ == "__main__":
    sys.exit(main())

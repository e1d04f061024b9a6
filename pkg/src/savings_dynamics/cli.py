"""Command-line surface.

Subcommands: simulate | classify | freq | sensitivity | chaotic-params |
sweep | verify.  Parameters come either from explicit flags (--r --v1 --v2
--rho), from the derived chaotic construction (--chaotic-b, optionally
--precision-target), or from a JSON config file (--config); flags win over
file values.  All numeric output uses 17 significant digits so binary64
values round-trip, and CSV is comma-separated with LF line endings.

Exit codes: 0 success (inconclusive verdicts included), 1 configuration
error, 2 I/O error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .analysis import classify_dichotomy, sensitivity_probe, visit_frequency
from .errors import ConfigError, SavingsDynamicsError
from .process import ChaoticConfig, ProcessParams, chaotic_params, simulate
from .verify import run_checks


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1, not argparse's 2
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="savdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    names = ("simulate", "classify", "freq", "sensitivity", "chaotic-params", "sweep", "verify")
    for name in names:
        sp = sub.add_parser(name)
        sp.add_argument("--r", type=float)
        sp.add_argument("--v1", type=float)
        sp.add_argument("--v2", type=float)
        sp.add_argument("--rho", type=float)
        sp.add_argument("--chaotic-b", type=float, dest="chaotic_b")
        sp.add_argument("--precision-target", type=float, dest="precision_target")
        sp.add_argument("--s0", type=float, action="append")
        sp.add_argument("--n", type=int)
        sp.add_argument("--N", type=int, dest="big_n")
        sp.add_argument("--J", type=str, dest="interval")
        sp.add_argument("--burn-in", type=int, dest="burn_in")
        sp.add_argument("--resolution", type=float)
        sp.add_argument("--epsilon", type=float)
        sp.add_argument("--max-iter", type=int, dest="max_iter")
        sp.add_argument("--tol", type=float)
        sp.add_argument("--gap-order", type=int, dest="gap_order")
        sp.add_argument("--out", type=str)
        sp.add_argument("--config", type=str)
    return parser


def _load_config(args: argparse.Namespace) -> dict:
    """Merge the JSON config file (if any) under the explicit flags."""
    merged: dict = {}
    if args.config is not None:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config file: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        merged.update(loaded)
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            merged[key] = value
    return merged


def _resolve_params(cfg: dict) -> ProcessParams | ChaoticConfig:
    explicit = [cfg.get(k) for k in ("r", "v1", "v2", "rho")]
    has_explicit = any(v is not None for v in explicit)
    has_chaotic = cfg.get("chaotic_b") is not None
    if has_explicit and has_chaotic:
        raise ConfigError("give either explicit parameters or --chaotic-b, not both")
    if has_chaotic:
        try:
            return chaotic_params(cfg["chaotic_b"], cfg.get("precision_target", 1e-13))
        except SavingsDynamicsError as exc:
            raise ConfigError(str(exc)) from exc
    if not all(v is not None for v in explicit):
        raise ConfigError("explicit parameters need all of --r --v1 --v2 --rho")
    try:
        return ProcessParams(r=cfg["r"], v1=cfg["v1"], v2=cfg["v2"], rho=cfg["rho"])
    except SavingsDynamicsError as exc:
        raise ConfigError(str(exc)) from exc


def _parse_interval(cfg: dict) -> tuple[float, float]:
    raw = cfg.get("interval")
    if raw is None:
        raise ConfigError("--J lo,hi is required")
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        lo, hi = raw
    else:
        parts = str(raw).split(",")
        if len(parts) != 2:
            raise ConfigError(f"malformed interval {raw!r}, expected lo,hi")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ConfigError(f"malformed interval {raw!r}") from exc
    if hi < lo:
        raise ConfigError(f"empty interval [{lo}, {hi}]")
    return float(lo), float(hi)


def _seeds(cfg: dict) -> list[float]:
    s0 = cfg.get("s0")
    if not s0:
        raise ConfigError("at least one --s0 is required")
    return [float(v) for v in s0]


@contextmanager
def _output(cfg: dict):
    path = cfg.get("out")
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def _as_process(p: ProcessParams | ChaoticConfig) -> ProcessParams:
    return p.process_params() if isinstance(p, ChaoticConfig) else p


def cmd_simulate(cfg: dict) -> int:
    p = _resolve_params(cfg)
    s0 = _seeds(cfg)[0]
    n = cfg.get("n")
    if n is None or n < 0:
        raise ConfigError("--n (non-negative) is required")
    series = simulate(_as_process(p), s0, n)
    with _output(cfg) as fh:
        fh.write("n,balance\n")
        for i, value in enumerate(series.values):
            fh.write(f"{i},{_fmt(value)}\n")
    return 0


def cmd_classify(cfg: dict) -> int:
    p = _resolve_params(cfg)
    kwargs = {}
    if cfg.get("max_iter") is not None:
        kwargs["max_iter"] = cfg["max_iter"]
    if cfg.get("tol") is not None:
        kwargs["tol"] = cfg["tol"]
    verdict = classify_dichotomy(p, **kwargs)
    record = {
        "verdict": verdict.kind,
        "periods": list(verdict.periods),
        "cycles": [list(c.cycle_points) for c in verdict.cycles],
        "evidence": verdict.evidence,
    }
    with _output(cfg) as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")
    return 0


def cmd_freq(cfg: dict) -> int:
    p = _resolve_params(cfg)
    lo, hi = _parse_interval(cfg)
    n = cfg.get("big_n")
    if n is None or n < 1:
        raise ConfigError("--N (positive) is required")
    with _output(cfg) as fh:
        fh.write("s0,count,N,freq,predicted\n")
        for s0 in _seeds(cfg):
            rep = visit_frequency(p, s0, lo, hi, n)
            predicted = _fmt(rep.predicted.predicted) if rep.predicted is not None else ""
            fh.write(f"{_fmt(s0)},{rep.count},{rep.N},{_fmt(rep.freq)},{predicted}\n")
    return 0


def cmd_sensitivity(cfg: dict) -> int:
    p = _resolve_params(cfg)
    if not isinstance(p, ChaoticConfig):
        raise ConfigError("sensitivity probes need --chaotic-b parameters")
    epsilon = cfg.get("epsilon", 1e-6)
    kwargs = {}
    if cfg.get("max_iter") is not None:
        kwargs["max_iter"] = cfg["max_iter"]
    with _output(cfg) as fh:
        fh.write("s0,epsilon,eta,witness_s0prime,witness_k,achieved_separation,succeeded\n")
        for s0 in _seeds(cfg):
            rep = sensitivity_probe(p, s0, epsilon, **kwargs)
            witness = _fmt(rep.witness_s0prime) if rep.witness_s0prime is not None else ""
            k = rep.witness_k if rep.witness_k is not None else ""
            fh.write(
                f"{_fmt(s0)},{_fmt(rep.epsilon)},{_fmt(rep.eta)},{witness},{k},"
                f"{_fmt(rep.achieved_separation)},{int(rep.succeeded)}\n"
            )
    return 0


def cmd_chaotic_params(cfg: dict) -> int:
    p = _resolve_params(cfg)
    if not isinstance(p, ChaoticConfig):
        raise ConfigError("chaotic-params needs --chaotic-b")
    lo, hi = p.interval_K()
    record = {
        "b": p.b,
        "r": 1.0 / p.b - 1.0,
        "v1": p.v1,
        "v2": p.v2,
        "delta": p.delta,
        "rho": p.rho,
        "truncation_order": p.truncation_order,
        "truncation_bound": p.truncation_bound,
        "trapping_interval": [lo, hi],
        "eta": 500.0 * p.b * (1.0 - 1.0 / p.b),
    }
    with _output(cfg) as fh:
        json.dump(record, fh, indent=2)
        fh.write("\n")
    return 0


def _axis_values(cfg: dict, name: str, fallback) -> list[float]:
    sweep = cfg.get("sweep", {})
    if name in sweep:
        spec = sweep[name]
        if isinstance(spec, (int, float)):
            return [float(spec)]
        if not (isinstance(spec, (list, tuple)) and len(spec) in (1, 3)):
            raise ConfigError(f"sweep axis {name!r} must be a value or [lo, hi, step]")
        if len(spec) == 1:
            return [float(spec[0])]
        lo, hi, step_size = (float(v) for v in spec)
        if step_size <= 0.0 or hi < lo:
            raise ConfigError(f"empty range on sweep axis {name!r}")
        out = []
        x = lo
        while x <= hi + 1e-12 * max(1.0, abs(hi)):
            out.append(x)
            x += step_size
        return out
    if fallback is None:
        raise ConfigError(f"sweep axis {name!r} missing (no flag value either)")
    return [float(fallback)]


def cmd_sweep(cfg: dict) -> int:
    if cfg.get("chaotic_b") is not None:
        raise ConfigError("sweep runs over explicit (r, v1, v2, rho) grids")
    axes = {
        name: _axis_values(cfg, name, cfg.get(name)) for name in ("r", "v1", "v2", "rho")
    }
    budget = cfg.get("budget", {})
    max_iter = int(budget.get("max_iter", cfg.get("max_iter") or 4000))
    max_period = int(budget.get("max_period", 64))
    cluster_samples = int(budget.get("cluster_samples", 4000))
    with _output(cfg) as fh:
        fh.write("r,v1,v2,rho,verdict,total_period\n")
        for r in axes["r"]:
            for v1 in axes["v1"]:
                for v2 in axes["v2"]:
                    for rho in axes["rho"]:
                        try:
                            p = ProcessParams(r=r, v1=v1, v2=v2, rho=rho)
                            verdict = classify_dichotomy(
                                p,
                                max_iter=max_iter,
                                max_period=max_period,
                                cluster_samples=cluster_samples,
                            )
                            kind = verdict.kind
                            total = sum(verdict.periods) if verdict.periods else ""
                        except SavingsDynamicsError:
                            kind, total = "inconclusive", ""
                        fh.write(
                            f"{_fmt(r)},{_fmt(v1)},{_fmt(v2)},{_fmt(rho)},{kind},{total}\n"
                        )
    return 0


def cmd_verify(cfg: dict) -> int:
    kwargs = {}
    if cfg.get("tol") is not None:
        kwargs["tol"] = cfg["tol"]
    if cfg.get("gap_order") is not None:
        kwargs["gap_order"] = cfg["gap_order"]
    results = run_checks(**kwargs)
    failures = 0
    with _output(cfg) as fh:
        for res in results:
            mark = "ok  " if res.passed else "FAIL"
            fh.write(f"{mark} {res.name:<35} {res.seconds:8.3f}s  {res.detail}\n")
            failures += not res.passed
        fh.write(f"{len(results) - failures}/{len(results)} checks passed\n")
    return 3 if failures else 0


_COMMANDS = {
    "simulate": cmd_simulate,
    "classify": cmd_classify,
    "freq": cmd_freq,
    "sensitivity": cmd_sensitivity,
    "chaotic-params": cmd_chaotic_params,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _load_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SavingsDynamicsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

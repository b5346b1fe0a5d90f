"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 cost-guard refusal, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from . import __version__
from .ensemble import DistributionSpec, EnsembleConfig
from .moments import (
    CostGuardError,
    count_obstruction_triples,
    exact_expected_moment,
    finite_n_formula,
    limit_moment,
)
from .statistics import central_moment_from, empirical_moments, fit_report, moment_samples, spacing_sample

OUT_ENV = "TOEPLITZ_RMT_OUT"

EXIT_OK, EXIT_CONFIG, EXIT_COST, EXIT_IO = 0, 2, 3, 4
HEAVY_TWO_K = 10
# limits already known exactly; larger orders would trigger a long count per run
KNOWN_LIMIT_MAX = 8


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    n: list[int] = field(default_factory=lambda: [100])
    dist: str = "gaussian"
    trials: int = 1000
    seed: int = 0
    k: int = 4
    two_k_max: int = 8
    window: int = 11
    matrices: int = 200
    out: str = "results"
    allow_heavy: bool = False
    json: bool = True
    csv: bool = True
    figures: bool = False
    workers: int = 1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def ensemble(self, n: int) -> EnsembleConfig:
        return EnsembleConfig(n=n, dist=DistributionSpec(self.dist), master_seed=self.seed)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def envelope(config: ExperimentConfig, payload) -> dict:
    body = json.dumps(payload, sort_keys=True)
    return {
        "tool": "toeplitz-rmt",
        "version": __version__,
        "config": config.to_dict(),
        "master_seed": config.seed,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "payload_sha256": hashlib.sha256(body.encode()).hexdigest(),
        "payload": payload,
    }


class Writer:
    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.root = Path(config.out)
        self.root.mkdir(parents=True, exist_ok=True)
        self.written: list[Path] = []

    def json(self, name: str, payload) -> None:
        if not self.config.json:
            return
        path = self.root / name
        path.write_text(json.dumps(envelope(self.config, payload), indent=2, sort_keys=True) + "\n")
        self.written.append(path)

    def csv(self, name: str, header, rows) -> None:
        if not self.config.csv:
            return
        path = self.root / name
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            w.writerows(rows)
        self.written.append(path)

    def figure(self, name: str) -> Path | None:
        if not self.config.figures:
            return None
        path = self.root / name
        self.written.append(path)
        return path


def _validate(config: ExperimentConfig) -> None:
    try:
        DistributionSpec(config.dist)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if any(n < 2 for n in config.n):
        raise ConfigError("--n values must be >= 2")
    if config.trials < 2:
        raise ConfigError("--trials must be >= 2")
    if not 0 <= config.seed < 2**64:
        raise ConfigError("--seed must be a 64-bit unsigned integer")
    if config.workers < 1:
        raise ConfigError("--workers must be >= 1")


def cmd_limit_moments(config: ExperimentConfig) -> list[list]:
    top = config.two_k_max
    if top < 2 or top % 2:
        raise ConfigError("--two-k-max must be an even integer >= 2")
    if top > HEAVY_TWO_K:
        raise CostGuardError(f"2k={top} beyond supported maximum {HEAVY_TWO_K}")
    if top > KNOWN_LIMIT_MAX and not config.allow_heavy:
        raise CostGuardError(f"2k={top} exceeds {KNOWN_LIMIT_MAX}; pass --allow-heavy")
    out = Writer(config)
    rows = []
    for two_k in range(2, top + 1, 2):
        report = limit_moment(two_k, allow_heavy=config.allow_heavy, workers=config.workers)
        out.json(f"limit_moment_{two_k}.json", report.to_dict())
        rows.append([two_k, _frac(report.value), report.gaussian, report.ratio])
    out.csv("limit_moments_summary.csv", ["moment", "exact_value", "gaussian", "ratio"], rows)
    out.json(
        "limit_moments_summary.json",
        [{"moment": m, "exact_value": v, "gaussian": g, "ratio": r} for m, v, g, r in rows],
    )
    return rows


def _limit_value(k: int) -> Fraction | None:
    if k % 2:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    if k <= KNOWN_LIMIT_MAX:
        return limit_moment(k).value
    return None


def cmd_empirical(config: ExperimentConfig) -> list[dict]:
    if not 0 <= config.k <= 12:
        raise ConfigError("--k must lie in 0..12")
    out = Writer(config)
    dist = DistributionSpec(config.dist)
    ks = list(range(config.k + 1))
    limits = {k: _limit_value(k) for k in ks}
    records = []
    for n in config.n:
        for est in empirical_moments(config.ensemble(n), ks, config.trials, config.workers):
            rec = est.to_dict()
            lim = limits[est.k]
            rec["limit"] = None if lim is None else float(lim)
            rec["deviation_from_limit"] = None if lim is None else est.mean - float(lim)
            if est.k in (2, 4):
                rec["finite_n_formula"] = finite_n_formula(est.k, n, dist)
                rec["exact_expected"] = float(exact_expected_moment(est.k, n, dist))
            records.append(rec)
    out.json("empirical_moments.json", records)
    cols = ["n", "k", "trials", "mean", "stderr", "limit", "deviation_from_limit"]
    out.csv("empirical_moments.csv", cols, [[r[c] for c in cols] for r in records])
    return records


def cmd_spacings(config: ExperimentConfig) -> list[dict]:
    out = Writer(config)
    summaries = []
    for n in config.n:
        try:
            sample = spacing_sample(config.ensemble(n), config.matrices, config.window, config.workers)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        report = fit_report(sample)
        payload = {**report.to_dict(), "n": n, "window": sample.window, "matrices": sample.matrices}
        out.json(f"spacings_n{n}.json", payload)
        out.csv(f"spacings_n{n}.csv", ["bin_left", "bin_right", "count", "density"], report.histogram_rows())
        fig = out.figure(f"spacings_n{n}.png")
        if fig is not None:
            from .plotting import spacing_histogram

            spacing_histogram(report, fig, title=f"N={n}, {config.matrices} matrices, window {config.window}")
        summaries.append(payload)
    return summaries


def cmd_convergence(config: ExperimentConfig) -> list[dict]:
    ns = config.n
    if len(ns) < 2 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("--n must list at least two strictly ascending dimensions")
    if config.trials < 100:
        raise ConfigError("convergence needs --trials >= 100")
    if not 0 <= config.k <= 12:
        raise ConfigError("--k must lie in 0..12")
    out = Writer(config)
    values = {2: [], 4: []}
    for n in ns:
        m = moment_samples(config.ensemble(n), [config.k], config.trials, config.workers)[:, 0]
        for order in (2, 4):
            values[order].append(central_moment_from(m, order))
    rows = []
    for i, n in enumerate(ns):
        row = {"n": n, "k": config.k, "trials": config.trials, "order2": values[2][i], "order4": values[4][i]}
        for order in (2, 4):
            prev = values[order][i - 1] if i else None
            cur = values[order][i]
            row[f"ratio{order}"] = prev / cur if prev is not None and cur > 0 else None
        rows.append(row)
    out.json("convergence.json", rows)
    cols = ["n", "k", "trials", "order2", "ratio2", "order4", "ratio4"]
    out.csv("convergence.csv", cols, [[r[c] for c in cols] for r in rows])
    fig = out.figure("convergence.png")
    if fig is not None:
        from .plotting import convergence_plot

        convergence_plot(ns, values, fig, config.k)
    return rows


def cmd_selftest(config: ExperimentConfig) -> list[str]:
    failures = []
    for N in range(1, 21):
        if 3 * count_obstruction_triples(N) != 2 * N**3 + N:
            failures.append(f"counting lemma at N={N}")
    for two_k, expected in ((2, Fraction(1)), (4, Fraction(8, 3)), (6, Fraction(11))):
        if limit_moment(two_k).value != expected:
            failures.append(f"limit moment {two_k}")
    from .ensemble import sample
    from .linalg import toeplitz_matvec
    import numpy as np

    s = sample(EnsembleConfig(64, master_seed=config.seed), 0)
    v = np.arange(64, dtype=float)
    if np.max(np.abs(toeplitz_matvec(s, v) - s.matrix() @ v)) > 1e-10 * np.linalg.norm(s.matrix(), 2) * np.linalg.norm(v):
        failures.append("fft matvec")
    return failures


COMMANDS = {
    "limit-moments": cmd_limit_moments,
    "empirical": cmd_empirical,
    "spacings": cmd_spacings,
    "convergence": cmd_convergence,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toeplitz-rmt", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trials=1000):
        p.add_argument("--out", default=None, help=f"output directory (default ${OUT_ENV} or ./results)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--json", action="store_true", help="write JSON (default: JSON and CSV)")
        p.add_argument("--csv", action="store_true", help="write CSV (default: JSON and CSV)")
        p.add_argument("--figures", action="store_true", help="also render PNG figures")

    def ensemble_args(p, n=(100,), trials=1000):
        p.add_argument("--n", type=int, nargs="+", default=list(n))
        p.add_argument("--dist", default="gaussian", choices=["gaussian", "rademacher", "uniform"])
        p.add_argument("--trials", type=int, default=trials)

    p = sub.add_parser("limit-moments", help="exact limiting even moments")
    p.add_argument("--two-k-max", type=int, default=8)
    p.add_argument("--allow-heavy", action="store_true")
    common(p)

    p = sub.add_parser("empirical", help="Monte Carlo moments M_k(N)")
    ensemble_args(p)
    p.add_argument("--k", type=int, default=4, help="largest moment order")
    common(p)

    p = sub.add_parser("spacings", help="central eigenvalue spacing statistics")
    ensemble_args(p, n=(400,))
    p.add_argument("--matrices", type=int, default=200)
    p.add_argument("--window", type=int, default=11)
    common(p)

    p = sub.add_parser("convergence", help="central-moment decay of M_k(A,N)")
    ensemble_args(p, n=(128, 256), trials=2000)
    p.add_argument("--k", type=int, default=4)
    common(p)

    p = sub.add_parser("selftest", help="fast internal consistency checks")
    common(p)
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values = {k: v for k, v in vars(args).items() if v is not None}
    if not values.get("json") and not values.get("csv"):
        values["json"] = values["csv"] = True
    if values.get("dist") == "uniform":
        values["dist"] = "uniform-sym"
    values.setdefault("out", os.environ.get(OUT_ENV, "results"))
    known = {f.name for f in fields(ExperimentConfig)}
    return ExperimentConfig(**{k: v for k, v in values.items() if k in known})


def _print_rows(command: str, result) -> None:
    if command == "limit-moments":
        print(f"{'2k':>3}  {'exact':>10}  {'gaussian':>8}  ratio")
        for two_k, value, gauss, ratio in result:
            print(f"{two_k:>3}  {value:>10}  {gauss:>8}  {ratio:.6f}")
    elif command == "selftest":
        print("selftest: " + ("ok" if not result else "FAILED: " + ", ".join(result)))
    else:
        for row in result:
            print(json.dumps(row, sort_keys=True))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        _validate(config)
        result = COMMANDS[config.command](config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CostGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_COST
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    _print_rows(config.command, result)
    if config.command == "selftest" and result:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

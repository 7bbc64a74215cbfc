"""CDS size versus node count on random unit-disk graphs.

Every (n, trial) pair gets its own topology seed ``derive_seed(base_seed, n,
trial)``, so adding trials or node counts never changes existing trials.
All selected algorithms run on the same graph of a trial.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import math
import statistics
import time
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Iterable, TextIO

from .algorithms import ALGORITHMS, MCDS2_RULES, run_algorithm
from .errors import CdsError, ConfigError, GenerationFailedError
from .graph import Graph
from .topology import (DEFAULT_AREA_SIDE, DEFAULT_MAX_RETRIES, DEFAULT_RADIUS, PRNG_NAME,
                       GenSpec, derive_seed, generate, to_graph)
from .verify import DEFAULT_NODE_LIMIT, check_cds, exact_min_cds

log = logging.getLogger(__name__)

ORACLE = "oracle"

CSV_COLUMNS = ["algorithm", "n", "trials", "mean_size", "stddev_size", "min_size", "max_size",
               "valid_fraction", "repaired_fraction", "mean_runtime_us"]
RAW_COLUMNS = ["n", "trial", "seed", "graph_hash", "algorithm", "size", "valid", "repaired",
               "runtime_us", "error"]


@dataclass(frozen=True)
class ExperimentConfig:
    n_values: tuple[int, ...] = tuple(range(20, 201, 20))
    trials: int = 30
    area_side: float = DEFAULT_AREA_SIDE
    radius: float = DEFAULT_RADIUS
    base_seed: int = 0
    algorithms: tuple[str, ...] = ("das", "mcds1", "mcds2", "mmcds")
    mcds2_rule: str = "single"
    include_oracle: bool = False
    oracle_limit: int = DEFAULT_NODE_LIMIT
    max_retries: int = DEFAULT_MAX_RETRIES
    # wall-clock timings make the CSV differ run to run, so they are opt-in
    timing: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(self.n_values))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.n_values:
            raise ConfigError("n_values must not be empty")
        if any(n < 1 for n in self.n_values):
            raise ConfigError("every n must be >= 1")
        if list(self.n_values) != sorted(set(self.n_values)):
            raise ConfigError("n_values must be strictly ascending")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.algorithms:
            raise ConfigError("at least one algorithm is required")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ConfigError(f"unknown algorithms: {', '.join(sorted(unknown))}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("algorithms listed twice")
        if self.mcds2_rule not in MCDS2_RULES:
            raise ConfigError(f"mcds2_rule must be one of {sorted(MCDS2_RULES)}")
        if self.area_side <= 0 or self.radius <= 0:
            raise ConfigError("area_side and radius must be positive")
        if self.max_retries < 1:
            raise ConfigError("max_retries must be >= 1")

    def with_overrides(self, **overrides) -> ExperimentConfig:
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def _parse_list(text: str) -> list[str]:
    return [p for p in text.replace(",", " ").split() if p]


_PARSERS = {
    "n_values": lambda s: tuple(int(x) for x in _parse_list(s)),
    "trials": int,
    "area_side": float,
    "radius": float,
    "base_seed": int,
    "algorithms": lambda s: tuple(_parse_list(s)),
    "mcds2_rule": str.strip,
    "include_oracle": _parse_bool,
    "oracle_limit": int,
    "max_retries": int,
    "timing": _parse_bool,
}


def parse_config_values(text: str) -> dict:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}: {exc}") from None
    return values


def load_config(path: str | Path, **overrides) -> ExperimentConfig:
    values = parse_config_values(Path(path).read_text())
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


@dataclass(frozen=True)
class TrialRow:
    n: int
    trial: int
    seed: int
    graph_hash: str
    algorithm: str
    size: int | None
    valid: bool
    repaired: bool
    runtime_us: float
    error: str = ""


@dataclass(frozen=True)
class ExperimentRecord:
    algorithm: str
    n: int
    trials: int
    mean_size: float
    stddev_size: float
    min_size: int | None
    max_size: int | None
    valid_fraction: float
    repaired_fraction: float
    mean_runtime: float  # microseconds, nan unless timing is enabled


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(g.dumps().encode()).hexdigest()[:16]


def trial_seed(cfg: ExperimentConfig, n: int, trial: int) -> int:
    return derive_seed(cfg.base_seed, n, trial)


def run_trial(cfg: ExperimentConfig, n: int, trial: int) -> list[TrialRow]:
    """One topology, every selected algorithm (plus the oracle when enabled)."""
    seed = trial_seed(cfg, n, trial)
    spec = GenSpec(n=n, area_side=cfg.area_side, radius=cfg.radius, seed=seed,
                   require_connected=True, max_retries=cfg.max_retries)
    try:
        g = to_graph(generate(spec))
    except GenerationFailedError as exc:
        log.warning("n=%d trial=%d: %s", n, trial, exc)
        names = list(cfg.algorithms) + ([ORACLE] if _oracle_on(cfg, n) else [])
        return [TrialRow(n, trial, seed, "", a, None, False, False, math.nan, str(exc))
                for a in names]
    ghash = graph_hash(g)
    log.debug("n=%d trial=%d seed=%d graph=%s", n, trial, seed, ghash)
    rows = []
    for name in cfg.algorithms:
        started = time.perf_counter()
        try:
            res = run_algorithm(name, g, cfg.mcds2_rule)
        except CdsError as exc:
            rows.append(TrialRow(n, trial, seed, ghash, name, None, False, False, math.nan,
                                 str(exc)))
            continue
        elapsed_us = (time.perf_counter() - started) * 1e6
        rows.append(TrialRow(n, trial, seed, ghash, name, res.size,
                             check_cds(g, res.cds).valid, res.repaired,
                             elapsed_us if cfg.timing else math.nan))
    if _oracle_on(cfg, n):
        opt = exact_min_cds(g, cfg.oracle_limit)
        rows.append(TrialRow(n, trial, seed, ghash, ORACLE, opt.min_size, True, False,
                             math.nan))
    return rows


def _oracle_on(cfg: ExperimentConfig, n: int) -> bool:
    return cfg.include_oracle and n <= cfg.oracle_limit


def run_trials(cfg: ExperimentConfig) -> list[TrialRow]:
    rows = []
    for n in cfg.n_values:
        for t in range(cfg.trials):
            rows.extend(run_trial(cfg, n, t))
    rows.sort(key=lambda r: (r.n, r.trial, r.algorithm))
    return rows


def aggregate(rows: Iterable[TrialRow]) -> list[ExperimentRecord]:
    """One record per (algorithm, n), ordered by n then algorithm name."""
    groups: dict[tuple[int, str], list[TrialRow]] = {}
    for r in rows:
        groups.setdefault((r.n, r.algorithm), []).append(r)
    out = []
    for (n, name), group in sorted(groups.items()):
        ok = [r for r in group if not r.error]
        sizes = [r.size for r in ok]
        if not ok:
            out.append(ExperimentRecord(name, n, 0, math.nan, math.nan, None, None,
                                        math.nan, math.nan, math.nan))
            continue
        runtimes = [r.runtime_us for r in ok]
        out.append(ExperimentRecord(
            algorithm=name,
            n=n,
            trials=len(ok),
            mean_size=statistics.fmean(sizes),
            stddev_size=statistics.stdev(sizes) if len(sizes) > 1 else 0.0,
            min_size=min(sizes),
            max_size=max(sizes),
            valid_fraction=sum(r.valid for r in ok) / len(ok),
            repaired_fraction=sum(r.repaired for r in ok) / len(ok),
            mean_runtime=math.nan if any(math.isnan(x) for x in runtimes)
            else statistics.fmean(runtimes),
        ))
    return out


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRecord]:
    return aggregate(run_trials(cfg))


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def _open(destination):
    if isinstance(destination, (str, Path)):
        return open(destination, "w", newline="", encoding="utf-8")
    return None


def _write_text(text: str, destination: str | Path | TextIO) -> None:
    fh = _open(destination)
    if fh is None:
        destination.write(text)
        return
    with fh:
        fh.write(text)


def emit_csv(records: Iterable[ExperimentRecord], destination: str | Path | TextIO) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, f.name)) for f in fields(r)])
    _write_text(buf.getvalue(), destination)


def emit_plot_data(records: Iterable[ExperimentRecord], destination: str | Path | TextIO) -> None:
    """gnuplot-style blocks: ``# algorithm`` then ``n mean_size`` lines."""
    by_algo: dict[str, list[ExperimentRecord]] = {}
    for r in records:
        by_algo.setdefault(r.algorithm, []).append(r)
    blocks = []
    for name in sorted(by_algo):
        lines = [f"# {name}"]
        lines.extend(f"{r.n} {r.mean_size:.6f}" for r in sorted(by_algo[name], key=lambda r: r.n))
        blocks.append("\n".join(lines) + "\n")
    _write_text("\n".join(blocks), destination)


def emit_raw(rows: Iterable[TrialRow], destination: str | Path | TextIO) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RAW_COLUMNS)
    for r in rows:
        w.writerow([r.n, r.trial, r.seed, r.graph_hash, r.algorithm,
                    "" if r.size is None else r.size, int(r.valid), int(r.repaired),
                    repr(r.runtime_us), r.error])
    _write_text(buf.getvalue(), destination)


def read_raw(source: str | Path) -> list[TrialRow]:
    rows = []
    with open(source, newline="", encoding="utf-8") as fh:
        for d in csv.DictReader(fh):
            rows.append(TrialRow(
                n=int(d["n"]), trial=int(d["trial"]), seed=int(d["seed"]),
                graph_hash=d["graph_hash"], algorithm=d["algorithm"],
                size=int(d["size"]) if d["size"] else None,
                valid=d["valid"] == "1", repaired=d["repaired"] == "1",
                runtime_us=float(d["runtime_us"]), error=d["error"]))
    return rows


def metadata(cfg: ExperimentConfig) -> dict:
    return {"prng": PRNG_NAME, "seed_mixing": "base_seed ^ splitmix64-chain(n, trial)",
            **{f.name: getattr(cfg, f.name) for f in fields(cfg)}}

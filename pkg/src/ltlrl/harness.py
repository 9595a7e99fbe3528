"""Monte-Carlo estimation of the probability that a learning run is
epsilon-optimal, with parameter sweeps, intercept extraction, an analytic
lower-bound check, and CSV/SVG emission.

Every repetition trains with a seed mixed deterministically from the master
seed and the (p, N, repetition) indices, then scores success with the exact
model-checking oracle.  Repetitions stop at the first count n >= 20 whose
adjusted binomial standard error is within the target, evaluated on the
prefix of results in repetition order, so the output is bit-identical no
matter how repetitions are scheduled.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exceptions import BoundViolatedError
from .family import gridworld, instantiate_from_witness, simple_pair
from .formulas import identifiers_in, parse
from .learn import ALGOS, default_hyper, train
from .probcheck import optimal_value, policy_value
from .schemes import SCHEMES, build_product
from .witness import find_uncommittable

ENV_SIMPLE_1 = "simple-1"
ENV_SIMPLE_2 = "simple-2"
ENV_WITNESS = "witness-pair"
ENV_GRIDWORLD = "gridworld"
ENVIRONMENTS = (ENV_SIMPLE_1, ENV_SIMPLE_2, ENV_WITNESS, ENV_GRIDWORLD)

# Episodes on the chain pairs reset every 10 steps; the gridworld needs room
# to reach the goal within an episode under heavy stickiness (8 moves that
# each succeed with probability 0.1 at p=0.9), so it uses 200-step episodes.
RESET_EVERY = {ENV_SIMPLE_1: 10, ENV_SIMPLE_2: 10, ENV_WITNESS: 10,
               ENV_GRIDWORLD: 200}

CSV_COLUMNS = ("environment", "scheme", "algo", "p", "N", "epsilon",
               "pac_estimate", "stderr", "repetitions", "master_seed")


def geometric_grid(start: float, stop: float, steps: int) -> tuple[float, ...]:
    if steps == 1:
        return (start,)
    ratio = (stop / start) ** (1.0 / (steps - 1))
    return tuple(start * ratio ** i for i in range(steps))


def default_p_grid(environment: str) -> tuple[float, ...]:
    if environment == ENV_GRIDWORLD:
        return geometric_grid(0.9, 0.6, 5)
    return tuple(10.0 ** (-(i + 1) / 2.0) for i in range(1, 6))


def default_n_grid(environment: str) -> tuple[int, ...]:
    if environment == ENV_GRIDWORLD:
        raw = geometric_grid(3540.0, 9e4, 21)
    else:
        raw = geometric_grid(10.0, 1e5, 21)
    return tuple(int(round(x)) for x in raw)


@dataclass(frozen=True)
class ExperimentConfig:
    environment: str = ENV_SIMPLE_1
    scheme: str = "multi-discount"
    algo: str = "q"
    epsilon: float = 0.1
    p_grid: tuple[float, ...] = ()
    n_grid: tuple[int, ...] = ()
    target_se: float = 0.01
    cutoff: float = 0.9
    delta_for_bound: float = 0.1
    master_seed: int = 0
    min_reps: int = 20
    witness_formula: str | None = None
    reset_every: int | None = None

    def __post_init__(self):
        if self.environment not in ENVIRONMENTS:
            raise ValueError(f"unknown environment {self.environment!r}")
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.algo not in ALGOS:
            raise ValueError(f"unknown algorithm {self.algo!r}")
        if self.epsilon <= 0 or self.target_se <= 0:
            raise ValueError("epsilon and target_se must be positive")
        if not self.p_grid:
            object.__setattr__(self, "p_grid", default_p_grid(self.environment))
        if not self.n_grid:
            object.__setattr__(self, "n_grid", default_n_grid(self.environment))
        if self.environment == ENV_WITNESS and not self.witness_formula:
            raise ValueError("witness-pair environment needs witness_formula")


@dataclass(frozen=True)
class CurvePoint:
    p: float
    n_samples: int
    pac_estimate: float
    stderr: float
    repetitions: int


def wilson_stderr(successes: int, reps: int) -> float:
    """Binomial standard error with one pseudo-success and one pseudo-failure,
    so a run of all-identical outcomes still reports nonzero uncertainty."""
    centered = (successes + 1.0) / (reps + 2.0)
    return math.sqrt(centered * (1.0 - centered) / reps)


def _environment(environment: str, p: float, witness_formula: str | None):
    if environment in (ENV_SIMPLE_1, ENV_SIMPLE_2):
        pair = simple_pair(p)
        mdp = pair.m1 if environment == ENV_SIMPLE_1 else pair.m2
        return mdp, pair.labeling, pair.target_formula
    if environment == ENV_WITNESS:
        f = parse(witness_formula, identifiers_in(witness_formula))
        pair = instantiate_from_witness(find_uncommittable(f), f, p)
        return pair.m1, pair.labeling, pair.target_formula
    return gridworld(p)


def rep_seed(master_seed: int, p_index: int, n_index: int, rep: int) -> int:
    return int(np.random.SeedSequence(
        (master_seed, p_index, n_index, rep)).generate_state(1)[0])


# Per-process cache of built environments, keyed by everything that shapes
# them; lets pool workers amortize automaton and oracle construction.
_CELL_CACHE: dict = {}


def _cell_setup(key):
    if key not in _CELL_CACHE:
        environment, scheme, p, witness_formula, reset_every = key
        mdp, labeling, formula = _environment(environment, p, witness_formula)
        prod = build_product(scheme, mdp, labeling, formula)
        optimal = optimal_value(mdp, labeling, formula).value
        _CELL_CACHE[key] = (mdp, labeling, formula, prod, optimal)
    return _CELL_CACHE[key]


def _run_repetition(task) -> bool:
    key, algo, epsilon, n_samples, seed = task
    mdp, labeling, formula, prod, optimal = _cell_setup(key)
    reset_every = key[4]
    hyper = default_hyper(algo, reset_every=reset_every)
    policy = train(algo, prod, hyper, n_samples, seed)
    value = policy_value(mdp, labeling, formula, policy).value
    return value >= optimal - epsilon


def _thread_cap() -> int:
    raw = os.environ.get("WORKBENCH_THREADS", "")
    if raw.strip():
        return max(1, int(raw))
    return os.cpu_count() or 1


def _stop_index(results: list, min_reps: int, target_se: float):
    """Smallest prefix length meeting the stop rule, or None."""
    successes = 0
    for n, ok in enumerate(results, start=1):
        successes += ok
        if n >= min_reps and wilson_stderr(successes, n) <= target_se:
            return n
    return None


def estimate_pac_prob(cfg: ExperimentConfig, p: float, n_samples: int,
                      p_index: int | None = None, n_index: int | None = None,
                      pool: ProcessPoolExecutor | None = None) -> CurvePoint:
    """One grid cell: repeat train-and-score until the standard error of the
    success fraction is within the target (at least min_reps repetitions)."""
    if p_index is None:
        p_index = cfg.p_grid.index(p) if p in cfg.p_grid else 0
    if n_index is None:
        n_index = cfg.n_grid.index(n_samples) if n_samples in cfg.n_grid else 0
    reset_every = cfg.reset_every
    if reset_every is None:
        reset_every = RESET_EVERY[cfg.environment]
    key = (cfg.environment, cfg.scheme, p, cfg.witness_formula, reset_every)

    def task(rep: int):
        return (key, cfg.algo, cfg.epsilon, n_samples,
                rep_seed(cfg.master_seed, p_index, n_index, rep))

    results: list[bool] = []
    batch = 64 if pool is not None else 1
    stop = None
    while stop is None:
        tasks = [task(rep) for rep in range(len(results), len(results) + batch)]
        if pool is not None:
            results.extend(pool.map(_run_repetition, tasks, chunksize=8))
        else:
            results.extend(_run_repetition(t) for t in tasks)
        stop = _stop_index(results, cfg.min_reps, cfg.target_se)

    kept = results[:stop]
    successes = sum(kept)
    return CurvePoint(p, n_samples, successes / stop,
                      wilson_stderr(successes, stop), stop)


def sweep(cfg: ExperimentConfig, progress=None) -> list[CurvePoint]:
    """Evaluate every (p, N) grid cell in grid order."""
    workers = _thread_cap()
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        points = []
        for pi, p in enumerate(cfg.p_grid):
            for ni, n_samples in enumerate(cfg.n_grid):
                point = estimate_pac_prob(cfg, p, n_samples, pi, ni, pool)
                points.append(point)
                if progress is not None:
                    progress(point)
        return points
    finally:
        if pool is not None:
            pool.shutdown()


# ---------------------------------------------------------------------------
# Intercepts and the analytic lower bound

def find_intercept(points: list[CurvePoint], cutoff: float):
    """Sample count at which the curve first crosses the cutoff, linearly
    interpolated in (log N, estimate); None if it never does."""
    if not points:
        return None
    if points[0].pac_estimate >= cutoff:
        return float(points[0].n_samples)
    for lo, hi in zip(points, points[1:]):
        if lo.pac_estimate < cutoff <= hi.pac_estimate:
            span = hi.pac_estimate - lo.pac_estimate
            frac = (cutoff - lo.pac_estimate) / span
            log_n = math.log(lo.n_samples) + frac * (
                math.log(hi.n_samples) - math.log(lo.n_samples))
            return math.exp(log_n)
    return None


def sample_lower_bound(p: float, delta: float) -> float:
    """Analytic minimum number of samples: log(2 delta) / log(1 - p)."""
    if delta >= 0.5:
        return 0.0
    return math.log(2.0 * delta) / math.log(1.0 - p)


@dataclass(frozen=True)
class BoundEntry:
    p: float
    intercept: float | None
    bound: float

    @property
    def censored(self) -> bool:
        return self.intercept is None

    @property
    def margin(self) -> float | None:
        if self.intercept is None:
            return None
        return self.intercept - self.bound


@dataclass(frozen=True)
class BoundReport:
    delta: float
    entries: tuple[BoundEntry, ...] = field(default_factory=tuple)

    @property
    def violations(self):
        return [e for e in self.entries if not e.censored and e.intercept < e.bound]


def check_lower_bound(intercepts: dict, delta: float) -> BoundReport:
    """Assert measured intercepts respect the analytic bound; intercepts
    missing from the grid are reported as censored, not as violations."""
    entries = tuple(BoundEntry(p, n_star, sample_lower_bound(p, delta))
                    for p, n_star in sorted(intercepts.items(), reverse=True))
    report = BoundReport(delta, entries)
    if report.violations:
        worst = report.violations[0]
        raise BoundViolatedError(
            f"intercept {worst.intercept:.2f} at p={worst.p} is below the "
            f"analytic bound {worst.bound:.2f}")
    return report


# ---------------------------------------------------------------------------
# CSV and SVG emission

def write_curves_csv(path, cfg: ExperimentConfig, points: list[CurvePoint]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for pt in points:
            writer.writerow([cfg.environment, cfg.scheme, cfg.algo,
                             repr(pt.p), pt.n_samples, repr(cfg.epsilon),
                             repr(pt.pac_estimate), repr(pt.stderr),
                             pt.repetitions, cfg.master_seed])


def read_curves_csv(path):
    """Rows as dicts with parsed numeric fields, in file order."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            row["p"] = float(row["p"])
            row["N"] = int(row["N"])
            row["epsilon"] = float(row["epsilon"])
            row["pac_estimate"] = float(row["pac_estimate"])
            row["stderr"] = float(row["stderr"])
            row["repetitions"] = int(row["repetitions"])
            out.append(row)
    return out


def curves_by_p(rows) -> dict:
    """Group CSV rows into CurvePoint lists per p, each sorted by N."""
    grouped: dict = {}
    for row in rows:
        grouped.setdefault(row["p"], []).append(
            CurvePoint(row["p"], row["N"], row["pac_estimate"],
                       row["stderr"], row["repetitions"]))
    return {p: sorted(pts, key=lambda c: c.n_samples)
            for p, pts in sorted(grouped.items(), reverse=True)}


def write_intercepts_csv(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("environment", "scheme", "algo", "p", "cutoff", "n_star"))
        for row in rows:
            n_star = "" if row["n_star"] is None else repr(row["n_star"])
            writer.writerow([row["environment"], row["scheme"], row["algo"],
                             repr(row["p"]), repr(row["cutoff"]), n_star])


def read_intercepts_csv(path):
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({
                "environment": row["environment"], "scheme": row["scheme"],
                "algo": row["algo"], "p": float(row["p"]),
                "cutoff": float(row["cutoff"]),
                "n_star": float(row["n_star"]) if row["n_star"] else None,
            })
    return out


_SVG_COLORS = ("#1f6fb2", "#d1495b", "#3e885b", "#c9a227", "#7d5ba6",
               "#2aa198", "#cb4b16")


def curves_svg(rows, width: int = 640, height: int = 420) -> str:
    """Minimal line chart: one polyline per p over a log-scaled N axis."""
    grouped = curves_by_p(rows)
    all_n = [pt.n_samples for pts in grouped.values() for pt in pts]
    lo, hi = math.log10(min(all_n)), math.log10(max(all_n))
    span = hi - lo if hi > lo else 1.0
    mleft, mright, mtop, mbot = 60, 20, 20, 50
    pw, ph = width - mleft - mright, height - mtop - mbot

    def x(n):
        return mleft + (math.log10(n) - lo) / span * pw

    def y(v):
        return mtop + (1.0 - v) * ph

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
             f'<rect width="{width}" height="{height}" fill="white"/>']
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        parts.append(f'<line x1="{mleft}" y1="{y(frac):.1f}" x2="{width - mright}" '
                     f'y2="{y(frac):.1f}" stroke="#dddddd"/>')
        parts.append(f'<text x="{mleft - 8}" y="{y(frac) + 4:.1f}" font-size="11" '
                     f'text-anchor="end">{frac}</text>')
    for exp in range(math.ceil(lo), math.floor(hi) + 1):
        parts.append(f'<line x1="{x(10 ** exp):.1f}" y1="{mtop}" x2="{x(10 ** exp):.1f}" '
                     f'y2="{height - mbot}" stroke="#eeeeee"/>')
        parts.append(f'<text x="{x(10 ** exp):.1f}" y="{height - mbot + 16}" font-size="11" '
                     f'text-anchor="middle">1e{exp}</text>')
    parts.append(f'<text x="{mleft + pw / 2:.0f}" y="{height - 12}" font-size="12" '
                 f'text-anchor="middle">number of samples</text>')
    for i, (p, pts) in enumerate(grouped.items()):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        coords = " ".join(f"{x(pt.n_samples):.1f},{y(pt.pac_estimate):.1f}" for pt in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{width - mright - 4}" y="{mtop + 14 + 14 * i}" font-size="11" '
                     f'text-anchor="end" fill="{color}">p={p:g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_curves_svg(path, rows) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(curves_svg(rows))


def smoke_config(master_seed: int = 0) -> ExperimentConfig:
    """Reduced first-pair sweep: three p values, 11 N points."""
    return ExperimentConfig(
        environment=ENV_SIMPLE_1,
        p_grid=(0.1, 10.0 ** -1.5, 0.01),
        n_grid=tuple(int(round(x)) for x in geometric_grid(10.0, 1e5, 11)),
        master_seed=master_seed,
    )

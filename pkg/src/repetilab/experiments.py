"""Experiment harness: parameter grids of family instances turned into CSV rows."""

from __future__ import annotations

import csv
import io
import math
import random
import signal
import threading
import time
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Callable

from . import __version__
from .engine import generate
from .families import (kociumaka_ones, kociumaka_string, lemma1_fixed_point_prefix,
                       lemma1_system, random_shifts, sqrt_params, sqrt_system, theorem4_nu,
                       zeros_one_system)
from .measures import lz76, lz_end, lz_no, r_measure, rle_runs, substring_complexity
from .model import nu_size, system_size
from .nu import nu_generate

ALL_MEASURES = ("delta", "r", "z", "zno", "ze", "runs")
REPORT_COLUMNS = ["source", "n", "delta_num", "delta_den", "delta", "r", "z", "z_no", "z_e", "runs_w"]


@dataclass
class MeasureReport:
    source: str
    n: int
    delta: Fraction | None = None
    r: int | None = None
    z: int | None = None
    z_no: int | None = None
    z_e: int | None = None
    runs_w: int | None = None
    b: int | None = None
    witness_size: int | None = None

    def row(self) -> dict:
        d = self.delta
        out = {"source": self.source, "n": self.n,
               "delta_num": None if d is None else d.numerator,
               "delta_den": None if d is None else d.denominator,
               "delta": None if d is None else float(d),
               "r": self.r, "z": self.z, "z_no": self.z_no, "z_e": self.z_e,
               "runs_w": self.runs_w}
        if self.b is not None:
            out["b"] = self.b
        if self.witness_size is not None:
            out["witness_size"] = self.witness_size
        return out


def measure_report(w: str, source: str = "input", measures=ALL_MEASURES,
                   bwt_mode: str = "rotations") -> MeasureReport:
    unknown = set(measures) - set(ALL_MEASURES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")
    rep = MeasureReport(source, len(w))
    if "delta" in measures:
        rep.delta = substring_complexity(w).delta
    if "r" in measures:
        rep.r = r_measure(w, bwt_mode)
    if "z" in measures:
        rep.z = len(lz76(w))
    if "zno" in measures:
        rep.z_no = len(lz_no(w))
    if "ze" in measures:
        rep.z_e = len(lz_end(w))
    if "runs" in measures:
        rep.runs_w = rle_runs(w)
    return rep


@dataclass
class ExperimentSpec:
    name: str
    grid: list = field(default_factory=list)
    measures: tuple = ALL_MEASURES
    output: str | None = None
    seed: int = 0
    jobs: int = 1
    timeout: float = 60.0
    bwt_mode: str = "rotations"

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.name!r}; choose from {', '.join(EXPERIMENTS)}")
        if not self.grid:
            self.grid = list(EXPERIMENTS[self.name][1])
        if not self.grid:
            raise ValueError("empty parameter grid")


def _lemma1_cell(d, rng, spec):
    L = lemma1_system(d)
    s = generate(L)
    rep = measure_report(s, f"lemma1:d={d}", spec.measures, spec.bwt_mode)
    rep.witness_size = system_size(L)
    row = rep.row()
    row["d"] = d
    if rep.delta is not None:
        row["delta_over_sqrt_n"] = float(rep.delta) / math.sqrt(len(s))
    return [row]


def _kociumaka_rows(e, rng, spec, prefixed):
    n = 2**e
    rows = []
    for label, shifts in (("zero", None), ("random", random_shifts(n, rng))):
        x = kociumaka_string(n, shifts)
        w = "0" * n + x if prefixed else x
        name = "prefixed-kociumaka" if prefixed else "kociumaka"
        rep = measure_report(w, f"{name}:n={n},shifts={label}", spec.measures, spec.bwt_mode)
        row = rep.row()
        row["log2_n"] = e
        for col in ("r", "z_e", "runs_w", "z", "z_no"):
            if row.get(col) is not None:
                row[f"{col}_over_log2_n"] = row[col] / e
        rows.append(row)
    return rows


def _theorem4_cell(e, rng, spec):
    n = 2**e
    rows = []
    for label, shifts in (("zero", None), ("random", random_shifts(n, rng))):
        x = kociumaka_string(n, shifts)
        N = theorem4_nu(x)
        w = nu_generate(N)
        assert w == x + lemma1_fixed_point_prefix(n)
        rep = measure_report(w, f"theorem4:n={n},shifts={label}", spec.measures, spec.bwt_mode)
        rep.witness_size = nu_size(N)
        row = rep.row()
        row["ones"] = kociumaka_ones(n)
        row["nu_size"] = rep.witness_size
        if rep.delta is not None:
            row["delta_over_sqrt_n"] = float(rep.delta) / math.sqrt(n)
        rows.append(row)
    return rows


def _zeros_one_cell(n, rng, spec):
    rows = []
    for label, L in (("constant", zeros_one_system(n)), ("sqrt", None)):
        if L is None:
            s, k, _ = sqrt_params(n)
            if s <= 2 or k <= 1:
                continue
            L = sqrt_system(n)
        w = generate(L)
        rep = measure_report(w, f"zeros-one:n={n},system={label}", spec.measures, spec.bwt_mode)
        rep.witness_size = system_size(L)
        row = rep.row()
        row["witness_over_sqrt_n"] = rep.witness_size / math.sqrt(n)
        rows.append(row)
    return rows


EXPERIMENTS: dict[str, tuple[Callable, list]] = {
    "lemma1-delta": (_lemma1_cell, [16, 32, 64, 128, 256, 512, 1024]),
    "kociumaka-r": (lambda e, rng, spec: _kociumaka_rows(e, rng, spec, False), list(range(8, 17))),
    "prefixed-kociumaka-ze": (lambda e, rng, spec: _kociumaka_rows(e, rng, spec, True), list(range(8, 17))),
    "theorem4": (_theorem4_cell, list(range(4, 13))),
    "zeros-one": (_zeros_one_cell, [2**e for e in range(4, 14)]),
}


class CellTimeout(Exception):
    pass


def _alarm(signum, frame):
    raise CellTimeout()


def _run_cell(args):
    name, index, param, spec_dict = args
    spec = ExperimentSpec(**spec_dict)
    rng = random.Random(f"{spec.seed}:{index}")
    fn = EXPERIMENTS[name][0]
    try:
        return fn(param, rng, spec)
    except CellTimeout:
        raise
    except Exception as e:  # noqa: BLE001 - a failing cell becomes an error row
        return [{"source": f"{name}:{param}", "n": None, "error": f"{type(e).__name__}: {e}"}]


def _run_serial(tasks, timeout):
    results = []
    use_alarm = (timeout and hasattr(signal, "SIGALRM")
                 and threading.current_thread() is threading.main_thread())
    for task in tasks:
        if use_alarm:
            old = signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, timeout)
        try:
            results.append(_run_cell(task))
        except CellTimeout:
            results.append([{"source": f"{task[0]}:{task[2]}", "n": None,
                             "error": f"timeout after {timeout} s"}])
        finally:
            if use_alarm:
                signal.setitimer(signal.ITIMER_REAL, 0)
                signal.signal(signal.SIGALRM, old)
    return results


def _run_parallel(tasks, jobs, timeout):
    import multiprocessing as mp

    pool = mp.get_context("spawn").Pool(jobs)
    try:
        pending = [pool.apply_async(_run_cell, (t,)) for t in tasks]
        results = []
        for task, fut in zip(tasks, pending):
            try:
                results.append(fut.get(timeout or None))
            except mp.TimeoutError:
                results.append([{"source": f"{task[0]}:{task[2]}", "n": None,
                                 "error": f"timeout after {timeout} s"}])
        return results
    finally:
        pool.terminate()


def _sort_key(row):
    n = row.get("n")
    return (n is None, n if n is not None else 0, str(row.get("source")))


def run_experiment(spec: ExperimentSpec) -> list[dict]:
    """Rows for every grid cell, sorted by n; failing cells become error rows."""
    spec_dict = asdict(spec)
    tasks = [(spec.name, i, p, spec_dict) for i, p in enumerate(spec.grid)]
    if spec.jobs > 1:
        results = _run_parallel(tasks, spec.jobs, spec.timeout)
    else:
        results = _run_serial(tasks, spec.timeout)
    rows = [row for cell in results for row in cell]
    rows.sort(key=_sort_key)
    return rows


def header_lines(spec: ExperimentSpec, timestamp: bool = True) -> list[str]:
    lines = [f"# repetilab {__version__} experiment={spec.name} seed={spec.seed} "
             f"bwt_mode={spec.bwt_mode}"]
    if timestamp:
        lines.append("# generated " + time.strftime("%Y-%m-%dT%H:%M:%S%z"))
    return lines


def rows_to_csv(rows: list[dict], header: list[str] = ()) -> str:
    cols = list(REPORT_COLUMNS)
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row[k]) for k in cols})
    return buf.getvalue()


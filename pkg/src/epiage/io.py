"""CSV and report emission.

Numbers are serialized with 17 significant digits so that re-reading a
file reproduces the in-memory doubles bit-exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .thresholds import ThresholdReport
from .transport import StateField


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_report(path, report: ThresholdReport) -> Path:
    path = Path(path)
    lines = [
        f"R0 = {fmt(report.r0)}",
        f"RC = {fmt(report.rc)}",
        f"dominant growth rate = {fmt(report.growth_rate)} 1/year",
        f"region = {report.region}",
    ]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_b_series(path, times, values) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", "B"])
        for t, b in zip(times, values):
            writer.writerow([fmt(t), fmt(b)])
    return path


def write_trajectory(path, field: StateField) -> Path:
    """Long-format rows (t, a, s, i, r) for every stored time row."""
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", "a", "s", "i", "r"])
        for row, t in enumerate(field.times):
            for col, a in enumerate(field.ages):
                writer.writerow(
                    [
                        fmt(t),
                        fmt(a),
                        fmt(field.s[row, col]),
                        fmt(field.i[row, col]),
                        fmt(field.r[row, col]),
                    ]
                )
    return path


def read_trajectory(path) -> StateField:
    """Inverse of write_trajectory (bit-exact for its own output)."""
    times, ages = [], []
    values = []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if header != ["t", "a", "s", "i", "r"]:
            raise ValueError(f"unexpected trajectory header: {header!r}")
        for row in reader:
            values.append([float(x) for x in row])
    data = np.asarray(values)
    times = np.unique(data[:, 0])
    ages = np.unique(data[:, 1])
    shape = (times.size, ages.size)
    if times.size * ages.size != data.shape[0]:
        raise ValueError("trajectory rows do not form a full grid")
    order = np.lexsort((data[:, 1], data[:, 0]))
    data = data[order]
    return StateField(
        times=times,
        ages=ages,
        s=data[:, 2].reshape(shape),
        i=data[:, 3].reshape(shape),
        r=data[:, 4].reshape(shape),
    )


def write_initial(path, ages, s0, i0, r0) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["a", "s0", "i0", "r0"])
        for k, a in enumerate(ages):
            writer.writerow([fmt(a), fmt(s0[k]), fmt(i0[k]), fmt(r0[k])])
    return path


def write_steady_states(path, states) -> Path:
    """Long-format steady profiles; one block of rows per branch."""
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["branch", "b_star", "residual", "a", "s", "i", "r"])
        for index, state in enumerate(states):
            for k, a in enumerate(state.ages):
                writer.writerow(
                    [
                        index,
                        fmt(state.b_star),
                        fmt(state.residual),
                        fmt(a),
                        fmt(state.s[k]),
                        fmt(state.i[k]),
                        fmt(state.r[k]),
                    ]
                )
    return path


def write_diagram(path, rows, ages=None) -> Path:
    """Bifurcation diagram CSV: one row per branch.

    Columns: swept_value, r0, branch_index, b_star, stability, then the
    infected profile sampled at ``ages`` (defaulting to each branch's own
    age grid; pass explicit ages to make rows comparable across kernels).
    """
    path = Path(path)
    sample_ages = None
    if ages is not None:
        sample_ages = np.asarray(ages, dtype=float)
    else:
        first_with_branch = next((row for row in rows if row.branches), None)
        if first_with_branch is not None:
            sample_ages = first_with_branch.branches[0].ages
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        header = ["swept_value", "r0", "branch_index", "b_star", "stability"]
        if sample_ages is not None:
            header += [f"i_star@{fmt(a)}" for a in sample_ages]
        writer.writerow(header)
        for row in rows:
            for index, branch in enumerate(row.branches):
                record = [
                    fmt(row.swept_value),
                    fmt(row.r0),
                    index,
                    fmt(branch.b_star),
                    branch.stability,
                ]
                record += [
                    fmt(v)
                    for v in np.interp(sample_ages, branch.ages, branch.infected)
                ]
                writer.writerow(record)
    return path

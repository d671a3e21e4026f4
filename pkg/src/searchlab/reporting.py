"""Tabular data products and their CSV/JSON encodings.

Floats are written with ``repr``, the shortest string that parses back to
the same double, so ``parse_csv(to_csv(t))`` reproduces every value exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from .algorithms import (
    SearchInstance,
    fenner_grover_interval,
    fenner_success_time,
    fenner_trajectory,
    fg_state,
    fg_success_time,
    fg_trajectory,
    grover_trajectory,
    rc_evolve,
    rc_gap,
    rc_ground_state,
    rc_ground_trajectory,
    rc_runtime,
    rc_schedule_s,
)
from .subspace import Trajectory, bloch_array, trajectory_from_states
from .synthesis import (
    walk_follower_gap,
    walk_follower_ground_state,
    walk_follower_schedule,
    walk_follower_trajectory,
)

ALGORITHMS = ("grover", "fg", "rc", "rc-ground", "fenner", "walk-follower")
TRAJECTORY_COLUMNS = ("index", "t", "s", "re_aw", "im_aw", "re_ar", "im_ar", "x", "y", "z",
                      "success_prob")


@dataclass
class Table:
    columns: List[str]
    rows: List[tuple]
    metadata: Dict[str, object] = field(default_factory=dict)
    summary: Dict[str, object] = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows], dtype=float)


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _parse_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


def to_csv(table: Table) -> str:
    buf = io.StringIO()
    for key, value in table.metadata.items():
        buf.write(f"# {key}={fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([fmt(v) for v in row])
    for key, value in table.summary.items():
        buf.write(f"# {key}={fmt(value)}\n")
    return buf.getvalue()


def parse_csv(text: str) -> Table:
    """Inverse of :func:`to_csv`; leading comments are metadata, trailing ones summary."""
    meta, summary, body = {}, {}, []
    seen_header = False
    for line in text.splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            (summary if seen_header else meta)[key] = _parse_value(value)
        elif line:
            body.append(line)
            seen_header = True
    reader = csv.reader(body)
    columns = next(reader)
    rows = [tuple(_parse_value(v) for v in r) for r in reader]
    return Table(columns, rows, meta, summary)


def _json_safe(x):
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    return x


def to_json(table: Table) -> str:
    doc = {
        "metadata": {k: _json_safe(v) for k, v in table.metadata.items()},
        "columns": list(table.columns),
        "records": [{c: _json_safe(v) for c, v in zip(table.columns, row)} for row in table.rows],
        "summary": {k: _json_safe(v) for k, v in table.summary.items()},
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_json(text: str) -> Table:
    doc = json.loads(text)
    cols = doc["columns"]
    rows = [tuple(rec[c] for c in cols) for rec in doc["records"]]
    return Table(cols, rows, doc["metadata"], doc.get("summary", {}))


# -- Data products ------------------------------------------------------------

def trajectory_table(traj: Trajectory) -> Table:
    amps = traj.amplitudes
    xyz = bloch_array(amps)
    prob = np.abs(amps[:, 0]) ** 2
    with_s = traj.s is not None
    cols = [c for c in TRAJECTORY_COLUMNS if with_s or c != "s"]
    rows = []
    for i in range(len(traj.t)):
        row = [i, float(traj.t[i])]
        if with_s:
            row.append(float(traj.s[i]))
        row += [amps[i, 0].real, amps[i, 0].imag, amps[i, 1].real, amps[i, 1].imag,
                xyz[i, 0], xyz[i, 1], xyz[i, 2], prob[i]]
        rows.append(tuple(float(v) if j else v for j, v in enumerate(row)))
    summary = {"path_length": traj.path_length, "max_norm_drift": traj.max_norm_drift}
    return Table(cols, rows, summary=summary)


def subsample(traj: Trajectory, samples: int) -> Trajectory:
    idx = np.unique(np.round(np.linspace(0, len(traj.t) - 1, samples)).astype(int))
    s = None if traj.s is None else traj.s[idx]
    return Trajectory(traj.t[idx], traj.amplitudes[idx], s=s,
                      max_norm_drift=traj.max_norm_drift, label=traj.label)


def runtime(algorithm: str, inst: SearchInstance) -> float:
    if algorithm == "grover":
        return float(grover_trajectory(inst).t[-1])
    if algorithm == "fg":
        return fg_success_time(inst)
    if algorithm in ("rc", "rc-ground"):
        return rc_runtime(inst)
    if algorithm == "fenner":
        return fenner_success_time(inst)
    if algorithm == "walk-follower":
        return fg_success_time(inst)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def build_trajectory(algorithm: str, inst: SearchInstance, samples: int) -> Trajectory:
    """Trajectory sampled the way each family is naturally parameterized.

    Walks are uniform in ``t``; ``rc-ground`` and ``walk-follower`` are
    uniform in ``s``. The ``rc`` simulation is RK4 on a uniform time grid,
    subsampled to ``samples`` points. Grover ignores ``samples`` and emits
    every iterate.
    """
    if algorithm == "grover":
        return grover_trajectory(inst)
    if algorithm == "fg":
        return fg_trajectory(inst, samples)
    if algorithm == "rc":
        return subsample(rc_evolve(inst), samples)
    if algorithm == "rc-ground":
        return rc_ground_trajectory(inst, samples)
    if algorithm == "fenner":
        return fenner_trajectory(inst, samples)
    if algorithm == "walk-follower":
        return walk_follower_trajectory(inst, samples)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def trajectory_at_times(algorithm: str, inst: SearchInstance, times) -> Trajectory:
    """Evaluate an analytic family at given times; simulations are rejected."""
    times = np.asarray(times, dtype=float)
    if algorithm == "fenner":
        return fenner_trajectory(inst, len(times), times=times)
    if algorithm == "fg":
        return trajectory_from_states(times, [fg_state(float(t), inst) for t in times], label="fg")
    if algorithm == "rc-ground":
        ss = rc_schedule_s(times, inst)
        return trajectory_from_states(times, [rc_ground_state(float(s), inst) for s in ss],
                                      s=ss, label="rc-ground")
    if algorithm == "walk-follower":
        ss = np.array([walk_follower_schedule(float(t), inst).s for t in times])
        return trajectory_from_states(times, [walk_follower_ground_state(float(s), inst)
                                              for s in ss], s=ss, label="walk-follower")
    raise ValueError(f"{algorithm!r} cannot be evaluated at arbitrary times")


def continuous_times(algorithm: str, traj: Trajectory, inst: SearchInstance) -> np.ndarray:
    """Time column, with Grover iterates mapped to the walk's per-iterate interval."""
    if algorithm == "grover":
        return traj.t * fenner_grover_interval(inst).up_to_phase
    return traj.t


def gap_table(algorithm: str, inst: SearchInstance, samples: int) -> Table:
    ss = np.linspace(0.0, 1.0, samples)
    if algorithm == "rc":
        g = rc_gap(ss, inst)
    elif algorithm == "walk-follower":
        g = np.array([walk_follower_gap(float(s), inst) for s in ss])
    else:
        raise ValueError("gap is defined for the rc and walk-follower families")
    rows = [(float(s), float(v)) for s, v in zip(ss, g)]
    j = int(np.argmin(g))
    return Table(["s", "g"], rows, summary={"min_g": float(g[j]), "argmin_s": float(ss[j])})


def schedule_table(algorithm: str, inst: SearchInstance, samples: int) -> Table:
    if algorithm == "rc":
        T = rc_runtime(inst)
        ts = np.linspace(0.0, T, samples)
        ts[-1] = T
        ss = rc_schedule_s(ts, inst)
    elif algorithm == "walk-follower":
        T = fg_success_time(inst)
        ts = np.linspace(0.0, T, samples)
        ss = np.array([walk_follower_schedule(float(t), inst).s for t in ts])
    else:
        raise ValueError("schedule is defined for the rc and walk-follower families")
    rows = [(float(t), float(s)) for t, s in zip(ts, ss)]
    return Table(["t", "s"], rows, summary={"T": float(T)})


# -- Trajectory comparison ----------------------------------------------------

def plane_normal(points: np.ndarray) -> np.ndarray:
    """Unit normal of the best-fit plane through the origin."""
    _, _, vt = np.linalg.svd(np.asarray(points, dtype=float))
    return vt[-1]


def compare_trajectories(a: Trajectory, b: Trajectory, normal: Optional[np.ndarray] = None) -> Table:
    """Pointwise fidelity, Bloch distance, and distance from A's great circle.

    Raises
    ------
    ValueError
        If the two trajectories have different sample counts.
    """
    if len(a.t) != len(b.t):
        raise ValueError(f"mismatched sampling: {len(a.t)} vs {len(b.t)} samples")
    pa, pb = bloch_array(a.amplitudes), bloch_array(b.amplitudes)
    n = plane_normal(pa) if normal is None else np.asarray(normal, dtype=float)
    ov = np.abs(np.sum(a.amplitudes.conj() * b.amplitudes, axis=1)) ** 2
    na = np.sum(np.abs(a.amplitudes) ** 2, axis=1)
    nb = np.sum(np.abs(b.amplitudes) ** 2, axis=1)
    fid = np.minimum(ov / (na * nb), 1.0)
    dist = np.linalg.norm(pa - pb, axis=1)
    circ = np.abs(pb @ n)
    last = max(len(a.t) - 1, 1)
    rows = [(i, i / last, float(fid[i]), float(dist[i]), float(circ[i])) for i in range(len(a.t))]
    summary = {
        "max_bloch_distance": float(dist.max()),
        "mean_bloch_distance": float(dist.mean()),
        "min_fidelity": float(fid.min()),
        "mean_fidelity": float(fid.mean()),
        "max_circle_distance": float(circ.max()),
        "mean_circle_distance": float(circ.mean()),
    }
    return Table(["index", "fraction", "fidelity", "bloch_distance", "circle_distance"], rows,
                 summary=summary)

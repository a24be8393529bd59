"""CSV tables and the plain-text state format.

Floats are written with ``repr`` so every value parses back bit-for-bit.
"""

from __future__ import annotations

import csv
import io
import os
from typing import Iterable, Optional, Sequence

import numpy as np

from bicone.causality import CausalRecord, ordering_reversal_threshold
from bicone.entanglement import BipartiteState
from bicone.errors import ConfigError, IoError
from bicone.scalar_field import Trajectory
from bicone.tensor import MetricTensor

TRAJECTORY_COLUMNS = ("t", "phi", "phi_dot", "c_of_t", "s_ratio")
RECORD_COLUMNS = ("name", "dt", "dx", "dy", "dz", "s2_g", "s2_ghat", "class_g", "class_ghat")


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if value is None:
        return ""
    return str(value)


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_text(path, text: str) -> str:
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return str(path)


def read_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def trajectory_csv(traj: Trajectory, time_scale: float = 1.0, speed_scale: float = 1.0) -> str:
    """Trajectory table; ``time_scale`` and ``speed_scale`` convert from natural units."""
    rate = 1.0 / time_scale
    rows = zip(
        traj.t * time_scale,
        traj.phi,
        traj.phi_dot * rate,
        traj.c_of_t * speed_scale,
        traj.s_ratio,
    )
    return csv_text(TRAJECTORY_COLUMNS, rows)


def write_trajectory_csv(path, traj: Trajectory, time_scale: float = 1.0, speed_scale: float = 1.0) -> str:
    return write_text(path, trajectory_csv(traj, time_scale, speed_scale))


def records_csv(
    records: Sequence[CausalRecord],
    names: Optional[Sequence[str]] = None,
    time_scale: float = 1.0,
    g: Optional[MetricTensor] = None,
    g_hat: Optional[MetricTensor] = None,
) -> str:
    """Batch export of causal records.

    When the metrics are given, the ordering-reversal threshold speed under
    each cone is appended (empty for non-spacelike separations).
    """
    names = list(names) if names is not None else [f"e{i}" for i in range(len(records))]
    header = list(RECORD_COLUMNS)
    with_thresholds = g is not None and g_hat is not None
    if with_thresholds:
        header += ["reversal_v_g", "reversal_v_ghat"]
    rows = []
    for name, rec in zip(names, records):
        d = rec.delta.components
        row = [name, d[0] * time_scale, d[1], d[2], d[3], rec.s2_g, rec.s2_ghat, rec.class_g.value, rec.class_ghat.value]
        if with_thresholds:
            row += [ordering_reversal_threshold(rec.delta, g), ordering_reversal_threshold(rec.delta, g_hat)]
        rows.append(row)
    return csv_text(header, rows)


def report_csv(rows: Sequence[tuple]) -> str:
    return csv_text(("quantity", "value", "unit"), rows)


# --- plain-text state format -----------------------------------------------------
#
#   # optional comments
#   dims 2 2
#   0.7071067811865476 0.0
#   0.0 0.0
#   ...
#
# one "re im" pair per line, row-major over (a, b).


def parse_state(text: str, normalize: bool = False) -> BipartiteState:
    dims = None
    amps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if parts[0] == "dims":
            if dims is not None or len(parts) != 3:
                raise ConfigError(f"line {lineno}: expected 'dims dA dB' once")
            dims = (int(parts[1]), int(parts[2]))
            continue
        if len(parts) != 2:
            raise ConfigError(f"line {lineno}: expected 're im', got {line!r}")
        try:
            amps.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from exc
    if dims is None:
        raise ConfigError("state text has no 'dims' line")
    return BipartiteState.from_vector(amps, dims, normalize=normalize)


def read_state(path, normalize: bool = False) -> BipartiteState:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_state(fh.read(), normalize=normalize)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def format_state(psi: BipartiteState) -> str:
    dA, dB = psi.dims
    lines = [f"dims {dA} {dB}"]
    lines += [f"{fmt(a.real)} {fmt(a.imag)}" for a in psi.vector]
    return "\n".join(lines) + "\n"

"""CSV and JSON writers."""

from __future__ import annotations

import io
import json
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from ..dynamics import Trajectory

FLOAT_FORMAT = ".15e"


def _fmt(v) -> str:
    return format(float(v), FLOAT_FORMAT)


def write_rows(fh: TextIO, header: Sequence[str], rows: Iterable[Sequence[float]]) -> None:
    fh.write(",".join(header) + "\n")
    for row in rows:
        fh.write(",".join(_fmt(v) for v in row) + "\n")


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_rows(buf, Trajectory.COLUMNS, traj.rows())
    return buf.getvalue()


def write_trajectory(path: str | Path, traj: Trajectory) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_rows(fh, Trajectory.COLUMNS, traj.rows())


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")

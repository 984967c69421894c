"""CSV emission and the run manifest.

The CSV column set, number formatting, and row order are a stable contract
consumed by external tooling; change nothing here lightly.  Reals are
written with 9 significant digits, which round-trips any value the metrics
pipeline produces at the precision downstream plots need.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Sequence, Union

from .harness import MetricsRecord, PointResult

CSV_COLUMNS = (
    "g",
    "k",
    "epsilon",
    "n",
    "dist",
    "frames",
    "users_total",
    "users_decoded",
    "plr",
    "plr_ci_low",
    "plr_ci_high",
    "plr_bound",
    "p_eps",
    "throughput",
    "eta",
)

_INT_COLUMNS = {"k", "n", "frames", "users_total", "users_decoded"}
_STR_COLUMNS = {"dist"}


class ReportError(ValueError):
    pass


def _fmt(value) -> str:
    return format(float(value), ".9g")


def _record_row(rec: MetricsRecord) -> list[str]:
    row = []
    for col in CSV_COLUMNS:
        val = getattr(rec, col)
        if col in _STR_COLUMNS:
            row.append(val)
        elif col in _INT_COLUMNS:
            row.append(str(int(val)))
        else:
            row.append(_fmt(val))
    return row


def render_csv(records: Sequence[MetricsRecord]) -> str:
    if not records:
        raise ReportError("no records to write")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in sorted(records, key=MetricsRecord.sort_key):
        writer.writerow(_record_row(rec))
    return buf.getvalue()


def emit_csv(records: Sequence[MetricsRecord], path: Union[str, Path]) -> None:
    Path(path).write_text(render_csv(records))


def read_csv(path: Union[str, Path]) -> list[MetricsRecord]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_COLUMNS:
            raise ReportError(f"unexpected CSV header: {reader.fieldnames}")
        records = []
        for row in reader:
            kwargs = {}
            for col in CSV_COLUMNS:
                if col in _STR_COLUMNS:
                    kwargs[col] = row[col]
                elif col in _INT_COLUMNS:
                    kwargs[col] = int(row[col])
                else:
                    kwargs[col] = float(row[col])
            records.append(MetricsRecord(**kwargs))
    return records


def config_hash(data: dict) -> str:
    """sha256 over the canonical (sorted-key, compact) JSON encoding."""
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    tool_version: str
    config_sha256: str
    master_seed: Optional[int]
    threads: int
    de_perspective: str
    backend: str
    created_utc: str
    points: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "config_sha256": self.config_sha256,
            "master_seed": self.master_seed,
            "threads": self.threads,
            "de_perspective": self.de_perspective,
            "backend": self.backend,
            "created_utc": self.created_utc,
            "points": list(self.points),
        }


def build_manifest(
    records: Sequence[MetricsRecord],
    details: Sequence[PointResult],
    config_data: dict,
    master_seed: Optional[int],
    threads: int,
    de_perspective: str,
) -> RunManifest:
    from . import __version__
    from .backend import backend_name

    boot_by_key = {
        (pr.record.g, pr.record.k, pr.record.mode): pr.plr_boot_ci for pr in details
    }
    points = []
    for rec in sorted(records, key=MetricsRecord.sort_key):
        entry: dict = {
            "g": rec.g,
            "k": rec.k,
            "mode": rec.mode,
            "frames": rec.frames,
        }
        boot = boot_by_key.get((rec.g, rec.k, rec.mode))
        if boot is not None:
            entry["plr_bootstrap_ci"] = [boot[0], boot[1]]
        points.append(entry)
    return RunManifest(
        tool_version=__version__,
        config_sha256=config_hash(config_data),
        master_seed=master_seed,
        threads=threads,
        de_perspective=de_perspective,
        backend=backend_name(),
        created_utc=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        points=tuple(points),
    )


def manifest_path(csv_path: Union[str, Path]) -> Path:
    p = Path(csv_path)
    return p.with_name(p.name + ".manifest.json")


def write_manifest(manifest: RunManifest, csv_path: Union[str, Path]) -> Path:
    out = manifest_path(csv_path)
    out.write_text(json.dumps(manifest.to_dict(), indent=2) + "\n")
    return out

"""
Artifact export: CSV tables, final-state JSON and the run manifest.

Files are staged in a private directory and moved into place together, the
manifest last, so a failed export never leaves partial outputs behind.
"""

import json
import logging
import os
import shutil
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import pandas as pd

from learning.config import LearnerConfig
from scenario.loader import scenario_hash
from scenario.models import Scenario
from utils.config import ARTIFACT_VERSION
from utils.errors import SimulationError

from .trace import EVENT_COLUMNS, METRICS_COLUMNS, Trace

logger = logging.getLogger(__name__)

MANIFEST = "manifest.txt"
TIMESTAMP_KEY = "generated_at"

PathLike = Union[str, Path]


class ArtifactExists(SimulationError):
    """The output directory already holds a manifest and --force was not given."""


def write_csv(df: pd.DataFrame, path: PathLike) -> None:
    """RFC-4180 CSV: header row, minimal quoting, CRLF record separators."""
    df.to_csv(path, index=False, lineterminator="\r\n")


def metrics_frame(trace: Trace) -> pd.DataFrame:
    return pd.DataFrame([m.model_dump() for m in trace.metrics], columns=METRICS_COLUMNS)


def events_frame(trace: Trace) -> pd.DataFrame:
    rows = [
        {
            "step": e.step,
            "kind": e.kind.value,
            "coalitions": " ".join(str(c) for c in e.coalitions),
            "uavs": " ".join(str(u) for u in e.uavs),
            "detail": e.detail,
        }
        for e in trace.events
    ]
    return pd.DataFrame(rows, columns=EVENT_COLUMNS)


def manifest_header(scenario: Scenario, seed: Union[int, str], config: LearnerConfig,
                    **extra: Any) -> Dict[str, str]:
    header = {
        "version": ARTIFACT_VERSION,
        "scenario_sha256": scenario_hash(scenario),
        "seed": str(seed),
        "config": json.dumps(config.model_dump(mode="json"), sort_keys=True),
    }
    header.update({k: str(v) for k, v in extra.items()})
    return header


class ArtifactWriter:
    """
    Stages output files and commits them with a manifest.

    Usage:
        with ArtifactWriter(out_dir, force) as writer:
            writer.csv("metrics.csv", df)
            writer.commit(header)
    """

    def __init__(self, out_dir: PathLike, force: bool = False) -> None:
        self.out_dir = Path(out_dir)
        if (self.out_dir / MANIFEST).exists() and not force:
            raise ArtifactExists(f"{self.out_dir / MANIFEST} exists; use --force to overwrite")
        self.files: List[str] = []
        self._staging: Optional[Path] = None

    def __enter__(self) -> "ArtifactWriter":
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=self.out_dir))
        return self

    def __exit__(self, *exc: Any) -> None:
        if self._staging is not None:
            shutil.rmtree(self._staging, ignore_errors=True)
            self._staging = None

    def _stage(self, name: str) -> Path:
        if self._staging is None:
            raise SimulationError("ArtifactWriter used outside its with-block")
        if name in self.files:
            raise SimulationError(f"artifact {name} written twice")
        self.files.append(name)
        return self._staging / name

    def csv(self, name: str, df: pd.DataFrame) -> None:
        write_csv(df, self._stage(name))

    def json(self, name: str, data: Any) -> None:
        self._stage(name).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")

    def file(self, name: str, render: Callable[[Path], None]) -> None:
        """Stage a file produced by a renderer that writes to the given path."""
        render(self._stage(name))

    def commit(self, header: Dict[str, str]) -> Path:
        """Move staged files into out_dir and write the manifest listing them."""
        for name in self.files:
            os.replace(self._staging / name, self.out_dir / name)
        lines = [f"{key}: {value}" for key, value in header.items()]
        lines.extend(f"file: {name}" for name in self.files)
        lines.append(f"{TIMESTAMP_KEY}: {datetime.now(timezone.utc).isoformat(timespec='seconds')}")
        manifest = self.out_dir / MANIFEST
        manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info(f"Wrote {len(self.files)} artifacts and {MANIFEST} to {self.out_dir}")
        return manifest


def write_trace(trace: Trace, scenario: Scenario, config: LearnerConfig, seed: int,
                out_dir: PathLike, force: bool = False) -> Path:
    """
    Export one run: metrics.csv, events.csv, final_state.json and manifest.txt.

    Returns:
        Path of the manifest

    Raises:
        ArtifactExists: out_dir already has a manifest and force is False
    """
    with ArtifactWriter(out_dir, force) as writer:
        writer.csv("metrics.csv", metrics_frame(trace))
        writer.csv("events.csv", events_frame(trace))
        writer.json("final_state.json", trace.final.model_dump(mode="json") if trace.final else {})
        header = manifest_header(scenario, seed, config, steps=trace.steps, converged_at=trace.converged_at)
        return writer.commit(header)


def read_manifest(path: PathLike) -> Dict[str, Any]:
    """Parse a manifest into its keys; 'file' entries are collected in a list."""
    entries: Dict[str, Any] = {"file": []}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition(": ")
        if key == "file":
            entries["file"].append(value)
        else:
            entries[key] = value
    return entries

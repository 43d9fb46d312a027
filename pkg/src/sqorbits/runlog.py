"""Append-only JSON-lines results and resumable run manifests for the searches.

Results file: one FourSquareHit per line (``FourSquareHit.to_dict`` with
sorted keys, rationals as "num/den").  A hit whose content hash is already in
the file is not written again, so an interrupted run can simply be restarted.

Manifest: a JSON object with the command, the mode, the full config, the tool
version, ``shards_total``, the sorted list ``shards_done`` and the
``started``/``finished`` timestamps.  Timestamps live only here, never in the
results file.
"""
from __future__ import annotations

import json
import os
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .foursquares import SearchConfig, SearchStats, iter_shards

RESULTS_DIR_ENV = "SQORBITS_RESULTS_DIR"


def default_results_dir() -> Path:
    return Path(os.environ.get(RESULTS_DIR_ENV, "results"))


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())


class ResultsLog:
    def __init__(self, path):
        self.path = Path(path)
        self.hashes = set()
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    if line.strip():
                        self.hashes.add(json.loads(line)["hash"])

    def append(self, hits) -> int:
        new = {}
        for h in hits:
            if h.key not in self.hashes and h.key not in new:
                new[h.key] = h
        if not new:
            return 0
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            for key, h in new.items():
                fh.write(json.dumps(h.to_dict(), sort_keys=True) + "\n")
                self.hashes.add(key)
        return len(new)

    def __len__(self) -> int:
        return len(self.hashes)


def read_results(path) -> list:
    with Path(path).open() as fh:
        return [json.loads(line) for line in fh if line.strip()]


def load_manifest(path) -> Optional[dict]:
    path = Path(path)
    if not path.exists():
        return None
    return json.loads(path.read_text())


def write_manifest(path, manifest: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    os.replace(tmp, path)


def _identity(cfg: SearchConfig) -> dict:
    # the worker count changes neither the shards nor the output
    d = cfg.to_dict()
    d.pop("workers")
    return d


def run_search(cfg: SearchConfig, mode: str, results_path, manifest_path, command: str = "search4") -> dict:
    """Run every shard not yet recorded in the manifest, appending hits in shard order."""
    manifest = load_manifest(manifest_path)
    if manifest is not None:
        if manifest.get("mode") != mode or _identity(SearchConfig.from_dict(manifest["config"])) != _identity(cfg):
            raise ValueError(f"manifest {manifest_path} was written for a different config")
    else:
        manifest = {
            "command": command,
            "mode": mode,
            "config": cfg.to_dict(),
            "version": __version__,
            "shards_total": cfg.shards,
            "shards_done": [],
            "started": _now(),
            "finished": None,
        }
        write_manifest(manifest_path, manifest)
    log = ResultsLog(results_path)
    todo = [k for k in range(cfg.shards) if k not in set(manifest["shards_done"])]
    stats = SearchStats()
    new = 0
    for k, hits, shard_stats in iter_shards(cfg, mode, todo):
        new += log.append(hits)
        stats.merge(shard_stats)
        manifest["shards_done"] = sorted(set(manifest["shards_done"]) | {k})
        write_manifest(manifest_path, manifest)
    if len(manifest["shards_done"]) == cfg.shards and manifest.get("finished") is None:
        manifest["finished"] = _now()
        write_manifest(manifest_path, manifest)
    return {
        "mode": mode,
        "results": str(results_path),
        "manifest": str(manifest_path),
        "shards_run": todo,
        "new_hits": new,
        "hits_total": len(log),
        "stats": {k: v for k, v in vars(stats).items() if k != "rejected_cells"},
        "normalization_rejected_cells": [list(c) for c in stats.rejected_cells],
    }

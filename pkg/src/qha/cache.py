"""Append-only JSON-lines cache for point counts and Kac polynomials."""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

CACHE_VERSION = 1
ENV_VAR = "QHA_CACHE"


def default_cache_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".qha" / "cache.jsonl"


class CountCache:
    """Records ``{"v", "kind": "count", quiver_hash, d, q, count}`` and ``{"v", "kind": "kac", ...}``.

    Records written under another format version are ignored on load.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_cache_path()
        self._counts: dict[tuple, int] = {}
        self._kac: dict[tuple, list[int]] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue  # a torn final line from an interrupted write
                if rec.get("v") != CACHE_VERSION:
                    continue
                if rec.get("kind") == "count":
                    self._counts[(rec["quiver_hash"], tuple(rec["d"]), rec["q"])] = int(rec["count"])
                elif rec.get("kind") == "kac":
                    self._kac[(rec["quiver_hash"], tuple(rec["d"]))] = [int(c) for c in rec["coefficients"]]

    def _append(self, rec: dict) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def get_count(self, quiver_hash: str, d, q: int) -> int | None:
        hit = self._counts.get((quiver_hash, tuple(d), q))
        if hit is not None:
            self.hits += 1
        return hit

    def has_count(self, quiver_hash: str, d, q: int) -> bool:
        return (quiver_hash, tuple(d), q) in self._counts

    def put_count(self, quiver_hash: str, d, q: int, count: int) -> None:
        key = (quiver_hash, tuple(d), q)
        with self._lock:
            if key in self._counts:
                return
            self._counts[key] = count
            self._append({"v": CACHE_VERSION, "kind": "count", "quiver_hash": quiver_hash,
                          "d": list(d), "q": q, "count": count})

    def get_kac(self, quiver_hash: str, d) -> list[int] | None:
        return self._kac.get((quiver_hash, tuple(d)))

    def put_kac(self, quiver_hash: str, d, coefficients) -> None:
        key = (quiver_hash, tuple(d))
        with self._lock:
            if self._kac.get(key) == list(coefficients):
                return
            self._kac[key] = list(coefficients)
            self._append({"v": CACHE_VERSION, "kind": "kac", "quiver_hash": quiver_hash,
                          "d": list(d), "coefficients": list(coefficients)})

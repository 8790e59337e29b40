"""On-disk memo of homology dimensions, one JSON file per key."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path


class DimCache:
    """Pure memo: results must not depend on whether it is present."""

    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def _path(self, key) -> Path:
        blob = json.dumps(key, sort_keys=True, default=list)
        return self.dir / (hashlib.sha256(blob.encode()).hexdigest() + ".json")

    def get(self, key) -> list[int] | None:
        path = self._path(key)
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (FileNotFoundError, json.JSONDecodeError):
            self.misses += 1
            return None
        self.hits += 1
        return data["dims"]

    def put(self, key, dims) -> None:
        path = self._path(key)
        fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"key": json.loads(json.dumps(key, default=list)), "dims": list(dims)}, fh)
        os.replace(tmp, path)

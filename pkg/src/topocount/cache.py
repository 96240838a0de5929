"""Persistent JSON store of computed T(n), T0(n) and k(n)."""
from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from .errors import CacheMismatch

SCHEMA_VERSION = 1
TABLES = ("T", "T0", "k")
DEFAULT_PATH = "topocount-cache.json"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _empty() -> dict:
    return {"schema_version": SCHEMA_VERSION, **{t: {} for t in TABLES}}


class ResultCache:
    """Single JSON document; entries are ``{"value", "method", "at"}`` keyed by
    table name and then by ``str(n)``.

    Recording a value that differs from a stored one raises CacheMismatch:
    either the file was tampered with or a computation is wrong.
    """

    def __init__(self, path, data: Optional[dict] = None):
        self.path = Path(path)
        self.data = data if data is not None else _empty()

    @classmethod
    def load(cls, path) -> ResultCache:
        path = Path(path)
        if not path.exists():
            return cls(path)
        data = json.loads(path.read_text())
        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"{path}: unsupported cache schema {data.get('schema_version')!r}")
        for t in TABLES:
            data.setdefault(t, {})
        return cls(path, data)

    def get(self, table: str, n: int) -> Optional[int]:
        entry = self.data[table].get(str(n))
        return None if entry is None else entry["value"]

    def entry(self, table: str, n: int) -> Optional[dict]:
        return self.data[table].get(str(n))

    def record(self, table: str, n: int, value: int, method: str) -> None:
        old = self.data[table].get(str(n))
        if old is not None:
            if old["value"] != value:
                raise CacheMismatch(
                    f"{table}({n}): computed {value} but the cache holds {old['value']} "
                    f"(method {old['method']}, at {old['at']})")
            return
        self.data[table][str(n)] = {"value": value, "method": method, "at": _now()}

    def save(self) -> None:
        self.path.write_text(self.dumps() + "\n")

    def dumps(self) -> str:
        return json.dumps(self.data, sort_keys=True, indent=2)

    def clear(self) -> None:
        self.data = _empty()
        if self.path.exists():
            self.path.unlink()

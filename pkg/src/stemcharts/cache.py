"""Content-addressed chart cache.

Cache keys hash (command, parameters, engine version); payloads round-trip
byte-identically.  Entries from other engine versions are never reused.
Writes go through a temporary file and an atomic rename; corrupt entries
are reported and evicted, never silently served.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
import time

ENGINE_VERSION = "0.1.0"


class CacheCorrupt(Exception):
    pass


def cache_key(command: str, params: dict) -> str:
    blob = json.dumps({"command": command, "params": params,
                       "engine_version": ENGINE_VERSION},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _path(cache_dir: str, key: str) -> str:
    return os.path.join(cache_dir, f"{key}.json")


def cache_store(cache_dir: str, key: str, payload: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    entry = {
        "key": key,
        "engine_version": ENGINE_VERSION,
        "created_at": time.time(),
        "payload": payload,
    }
    path = _path(cache_dir, key)
    tmp = path + f".tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(entry, fh)
    os.replace(tmp, path)
    return path


def cache_load(cache_dir: str, key: str) -> str | None:
    """Return the cached payload, or None on miss.  Corrupt or stale
    entries are evicted with a report on stderr."""
    path = _path(cache_dir, key)
    if not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            entry = json.load(fh)
        if entry.get("key") != key:
            raise CacheCorrupt("key mismatch")
        if entry.get("engine_version") != ENGINE_VERSION:
            return None  # stale version: ignore, do not evict
        payload = entry["payload"]
        if not isinstance(payload, str):
            raise CacheCorrupt("payload is not a string")
        return payload
    except (json.JSONDecodeError, KeyError, OSError, CacheCorrupt) as exc:
        print(f"stemcharts: evicting corrupt cache entry {path}: {exc}",
              file=sys.stderr)
        try:
            os.remove(path)
        except OSError:
            pass
        return None

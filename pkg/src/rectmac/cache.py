"""Content-addressed on-disk cache for expensive expansions.

Entries live in ``$RECTMAC_CACHE_DIR`` (default ``~/.cache/rectmac``) as
``<sha256>.json`` (the payload) next to ``<sha256>.manifest.json`` (the
parameters and library version).  Deleting the directory is always safe.
Set ``RECTMAC_CACHE=off`` to bypass it entirely.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from . import __version__

log = logging.getLogger(__name__)

stats = {"hits": 0, "misses": 0}


def cache_dir() -> Path:
    return Path(os.environ.get("RECTMAC_CACHE_DIR") or Path.home() / ".cache" / "rectmac")


def enabled() -> bool:
    return os.environ.get("RECTMAC_CACHE", "on").lower() not in ("off", "0", "no")


def key_for(kind: str, params: dict) -> str:
    blob = json.dumps({"kind": kind, "params": params, "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def cached(kind: str, params: dict, compute, dump, load):
    """Return ``compute()``, memoized on disk via ``dump``/``load`` (JSON-able)."""
    if not enabled():
        return compute()
    h = key_for(kind, params)
    d = cache_dir()
    data_path = d / f"{h}.json"
    if data_path.exists():
        try:
            value = load(json.loads(data_path.read_text()))
            stats["hits"] += 1
            return value
        except (ValueError, KeyError, OSError) as exc:  # corrupt entry: recompute
            log.warning("discarding unreadable cache entry %s: %s", data_path.name, exc)
    stats["misses"] += 1
    value = compute()
    try:
        _atomic_write(data_path, json.dumps(dump(value)))
        manifest = {"kind": kind, "params": params, "version": __version__, "sha256": h}
        _atomic_write(d / f"{h}.manifest.json", json.dumps(manifest, sort_keys=True, indent=1))
    except OSError as exc:
        log.warning("cache write failed: %s", exc)
    return value


def clear_memory():
    """Drop every in-process memo table (used to time computations cold)."""
    import sys

    for name, mod in list(sys.modules.items()):
        if not name.startswith("rectmac.") or mod is None:
            continue
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
    vo = sys.modules.get("rectmac.vertexop")
    if vo is not None:
        vo._TE.clear()
        vo._TZ.clear()

"""JSON form of CGC tables and a content-addressed on-disk cache.

A cache file holds ``{"checksum": sha256(payload), "payload": {...}}``.  The
file name is the sha256 of the key (rep1, rep2, rep3, q, backend,
convention), writes go through a temporary file and ``os.replace`` so
concurrent writers never leave a partial file behind.
"""

import hashlib
import json
import os
import tempfile

from .basis import GTLabel, enumerate_basis
from .qnum import format_exact, to_float


def label_strings(g):
    return GTLabel(*g).strings()


def table_payload(table):
    """Deterministic dict for a :class:`CGCTable`, entries in product basis order."""
    rep1, rep2, rep3 = table.reps
    order = {g: i for i, g in enumerate(enumerate_basis(rep3))}
    o1 = {g: i for i, g in enumerate(enumerate_basis(rep1))}
    o2 = {g: i for i, g in enumerate(enumerate_basis(rep2))}
    keys = sorted(table.entries, key=lambda k: (k[2], order[k[3]], o1[k[0]], o2[k[1]]))
    entries = []
    for g1, g2, s, g3 in keys:
        v = table.entries[(g1, g2, s, g3)]
        entries.append({
            "gamma1": label_strings(g1),
            "gamma2": label_strings(g2),
            "s": s,
            "gamma3": label_strings(g3),
            "value": format_exact(v),
            "value_float": to_float(v),
        })
    return {
        "q": table.q.label(),
        "backend": table.q.backend,
        "labels": {"rep1": list(rep1), "rep2": list(rep2), "rep3": list(rep3),
                   "multiplicity": table.multiplicity},
        "entries": entries,
        "convention": table.convention,
    }


def dumps(payload):
    """Canonical JSON text of a payload."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def cache_key(rep1, rep2, rep3, q, convention):
    text = json.dumps([list(rep1), list(rep2), list(rep3), q.label(), q.backend, convention])
    return hashlib.sha256(text.encode()).hexdigest()


def _checksum(payload):
    return hashlib.sha256(dumps(payload).encode()).hexdigest()


class CacheError(OSError):
    """A cache file exists but fails its checksum."""


def load(directory, key):
    """Payload stored under ``key``, or None if absent.  Raises CacheError on corruption."""
    path = os.path.join(directory, key + ".json")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except FileNotFoundError:
        return None
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
        payload = doc["payload"]
        ok = doc["checksum"] == _checksum(payload)
    except (ValueError, KeyError, TypeError):
        ok = False
    if not ok:
        raise CacheError(f"checksum mismatch in cache file {path}")
    return payload


def store(directory, key, payload):
    """Atomically write ``payload`` under ``key``; returns the file path."""
    try:
        os.makedirs(directory, exist_ok=True)
        path = os.path.join(directory, key + ".json")
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps({"checksum": _checksum(payload), "payload": payload}))
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"cannot write cache in {directory}: {exc}") from exc
    return path

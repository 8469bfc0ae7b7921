"""On-disk cache of Bernoulli tables, keyed by p.

File layout (JSON)::

    {"format_version": 1,
     "checksum": "<sha256 of the canonical records JSON>",
     "records": {"19": [B_2, B_4, ..., B_16], ...}}

A version or checksum mismatch, or an unreadable file, triggers a rebuild.
Writes go through a temporary file and an atomic rename.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .bernoulli import BernoulliTable, bernoulli_table
from .errors import CorruptCache

FORMAT_VERSION = 1
ENV_VAR = "FERMAT_SHA_CACHE"

log = logging.getLogger(__name__)


def default_cache_path() -> Path:
    base = os.environ.get("XDG_DATA_HOME") or os.path.join(os.path.expanduser("~"), ".local", "share")
    return Path(base) / "fermat_sha" / "bernoulli.json"


def resolve_cache_path(flag: str | os.PathLike | None = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else default_cache_path()


def _checksum(records: dict) -> str:
    blob = json.dumps(records, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _table_from_record(p: int, values: list) -> BernoulliTable:
    if len(values) != (p - 3) // 2:
        raise CorruptCache(f"record for p={p} has {len(values)} entries")
    mapping = {2 * i + 2: int(v) for i, v in enumerate(values)}
    if any(not 0 <= v < p for v in mapping.values()):
        raise CorruptCache(f"record for p={p} holds out-of-range residues")
    irregular = tuple(k for k, v in mapping.items() if v == 0)
    return BernoulliTable(p=p, values=mapping, irregular_indices=irregular)


class BernoulliCache:
    """Lazily loaded table store; ``builds`` counts tables computed from scratch."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.builds = 0
        self._records: dict | None = None

    def _read(self) -> dict:
        try:
            with open(self.path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            return {}
        except (OSError, ValueError) as exc:
            raise CorruptCache(f"unreadable cache {self.path}: {exc}") from None
        if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
            raise CorruptCache(f"cache {self.path} has format {doc.get('format_version') if isinstance(doc, dict) else None!r}")
        records = doc.get("records")
        if not isinstance(records, dict) or doc.get("checksum") != _checksum(records):
            raise CorruptCache(f"checksum mismatch in {self.path}")
        return records

    def records(self) -> dict:
        if self._records is None:
            try:
                self._records = self._read()
            except CorruptCache as exc:
                log.warning("%s; rebuilding", exc)
                self._records = {}
        return self._records

    def save(self) -> None:
        records = self.records()
        doc = {"format_version": FORMAT_VERSION, "checksum": _checksum(records), "records": records}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".bernoulli-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _lookup(self, p: int) -> BernoulliTable | None:
        values = self.records().get(str(p))
        if values is None:
            return None
        try:
            return _table_from_record(p, values)
        except (CorruptCache, TypeError, ValueError) as exc:
            log.warning("bad cache record for p=%d (%s); rebuilding", p, exc)
            return None

    def get_many(self, primes) -> dict:
        out, dirty = {}, False
        for p in primes:
            p = int(p)
            table = self._lookup(p)
            if table is None:
                table = bernoulli_table(p)
                self.builds += 1
                self.records()[str(p)] = [table.values[k] for k in sorted(table.values)]
                dirty = True
            out[p] = table
        if dirty:
            self.save()
        return out

    def get(self, p: int) -> BernoulliTable:
        return self.get_many([p])[int(p)]


def cache_load_or_build(p: int, path: str | os.PathLike | None = None) -> BernoulliTable:
    return BernoulliCache(resolve_cache_path(path)).get(p)

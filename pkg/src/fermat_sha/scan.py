"""Per-prime scans over quotient triples and their CSV/JSON serialization."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .bernoulli import BernoulliTable, bernoulli_table
from .curves import QuotientTriple, enumerate_triples, make_triple
from .selmer import evaluate_theorems

CSV_FIELDS = ("p", "a", "b", "c", "reduction", "gamma", "nonsimple",
              "old", "free", "nontrivial", "selmer_dim", "rank_bound")


@dataclass(frozen=True)
class ScanRow:
    p: int
    a: int
    b: int
    c: int
    reduction: str
    gamma: int
    nonsimple: bool
    old: str
    free: str
    nontrivial: str
    selmer_dim: int | None
    rank_bound: int | None

    @classmethod
    def from_report(cls, report) -> "ScanRow":
        t = report.triple
        return cls(p=int(t.p), a=t.a, b=t.b, c=t.c, reduction=report.reduction.value,
                   gamma=report.gamma, nonsimple=report.nonsimple,
                   old=report.verdict_old.value, free=report.verdict_free.value,
                   nontrivial=report.verdict_nontrivial.value,
                   selmer_dim=report.selmer_dim, rank_bound=report.rank_bound)

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRow":
        return cls(**{k: d[k] for k in CSV_FIELDS})

    def to_dict(self) -> dict:
        return asdict(self)


def scan_triples(triples, table: BernoulliTable) -> list:
    return [ScanRow.from_report(evaluate_theorems(t, table)) for t in triples]


def _scan_chunk(args) -> list:
    p, pairs, values, irregular = args
    table = BernoulliTable(p=p, values=values, irregular_indices=irregular)
    return scan_triples([make_triple(p, a, b) for a, b in pairs], table)


def scan(p: int, orbits: bool = False, table: BernoulliTable | None = None,
         jobs: int = 1, reduction: str | None = None) -> list:
    """One row per triple (or per isomorphism class), sorted by (a, b)."""
    table = table or bernoulli_table(p)
    triples = enumerate_triples(p, up_to_isomorphism=orbits)
    if jobs <= 1 or len(triples) < 2 * jobs:
        rows = scan_triples(triples, table)
    else:
        pairs = [(t.a, t.b) for t in triples]
        size = -(-len(pairs) // jobs)
        chunks = [(int(p), pairs[i : i + size], table.values, table.irregular_indices)
                  for i in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = [row for part in pool.map(_scan_chunk, chunks) for row in part]
    if reduction is not None:
        rows = [r for r in rows if r.reduction == reduction]
    return sorted(rows, key=lambda r: (r.a, r.b))


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def write_scan(rows, fmt: str, sink) -> None:
    rows = sorted(rows, key=lambda r: (r.a, r.b))
    if fmt == "csv":
        w = csv.writer(sink, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in rows:
            d = r.to_dict()
            w.writerow([_csv_cell(d[k]) for k in CSV_FIELDS])
    elif fmt == "json":
        json.dump([r.to_dict() for r in rows], sink, indent=2, ensure_ascii=False)
        sink.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def format_scan(rows, fmt: str) -> str:
    buf = io.StringIO()
    write_scan(rows, fmt, buf)
    return buf.getvalue()


def read_scan_json(text: str) -> list:
    return [ScanRow.from_dict(d) for d in json.loads(text)]


def _parse_cell(key: str, v: str):
    if key in ("reduction", "old", "free", "nontrivial"):
        return v
    if key == "nonsimple":
        return v == "true"
    if v == "":
        return None
    return int(v)


def read_scan_csv(text: str) -> list:
    reader = csv.DictReader(io.StringIO(text))
    return [ScanRow.from_dict({k: _parse_cell(k, v) for k, v in row.items()}) for row in reader]

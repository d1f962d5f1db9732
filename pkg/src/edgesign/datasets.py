"""Benchmark dataset download, caching and normalization.

Three signed social networks are supported. Each is fetched from its
public archive, decompressed into a per-dataset cache directory, and
converted to the canonical edge-list format ("src dst sign" lines,
'#' comments). Fetches are idempotent: a cache hit is verified against
a sha256 sidecar written on first download, and a stale or corrupted
cache is invalidated with an explicit message.

Published statistics for these datasets differ slightly from what the
raw archives contain today; the per-dataset `notes` record the expected
deltas instead of silently correcting them (duplicate (src,dst) pairs
collapse to their first occurrence at graph build time).
"""
from __future__ import annotations

import gzip
import hashlib
import shutil
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from filelock import FileLock


@dataclass(frozen=True)
class DatasetDescriptor:
    name: str
    url: str
    archive: str                 # 'gzip' or 'plain'
    fmt: str                     # 'snap' or 'wiki-election'
    expected_nodes: int
    expected_edges: int
    expected_pos_fraction: float
    notes: str = ""


DATASETS = {
    "wikipedia": DatasetDescriptor(
        name="wikipedia",
        url="https://snap.stanford.edu/data/wikiElec.ElecBs3.txt.gz",
        archive="gzip", fmt="wiki-election",
        expected_nodes=7115, expected_edges=103108,
        expected_pos_fraction=0.7879,
        notes=("adminship election records; one edge per vote, voter -> "
               "candidate, neutral (0) votes dropped, repeated votes "
               "collapse to the first at build time")),
    "slashdot": DatasetDescriptor(
        name="slashdot",
        url="https://snap.stanford.edu/data/soc-sign-Slashdot090221.txt.gz",
        archive="gzip", fmt="snap",
        expected_nodes=82140, expected_edges=549202,
        expected_pos_fraction=0.7740,
        notes=("friend/foe tags, Feb 2009 snapshot; the raw archive holds "
               "a handful more rows than the published count, attributed "
               "to duplicate pairs removed at build time")),
    "epinions": DatasetDescriptor(
        name="epinions",
        url="https://snap.stanford.edu/data/soc-sign-epinions.txt.gz",
        archive="gzip", fmt="snap",
        expected_nodes=131580, expected_edges=840799,
        expected_pos_fraction=0.8529,
        notes=("trust/distrust statements; raw archive carries ~0.1% "
               "duplicate pairs relative to the published count")),
}


def descriptor(name: str) -> DatasetDescriptor:
    try:
        return DATASETS[name]
    except KeyError:
        raise ValueError(
            f"unknown dataset {name!r}; choose from {sorted(DATASETS)}") from None


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def raw_path(name: str, cache_dir) -> Path:
    return Path(cache_dir) / name / "raw.txt"


def canonical_path(name: str, cache_dir) -> Path:
    return Path(cache_dir) / name / "edges.txt"


def fetch(name: str, cache_dir, url: str | None = None) -> Path:
    """Download (or reuse) the raw dataset file; returns its path.

    The decompressed file is cached next to a sha256 sidecar. When the
    sidecar disagrees with the file, the cache is discarded and fetched
    again. Proxy environment variables are honored. Concurrent fetches
    of the same dataset serialize on a per-dataset file lock.
    """
    desc = descriptor(name)
    url = url or desc.url
    target = raw_path(name, cache_dir)
    target.parent.mkdir(parents=True, exist_ok=True)
    sidecar = target.with_suffix(".sha256")
    with FileLock(str(target.parent / "fetch.lock")):
        if target.exists() and sidecar.exists():
            if _sha256(target) == sidecar.read_text().strip():
                return target
            print(f"cache for {name!r} failed checksum verification; "
                  "discarding and downloading again")
            target.unlink()
            sidecar.unlink()
        tmp = target.with_suffix(".part")
        with urllib.request.urlopen(url) as resp, open(tmp, "wb") as out:
            if desc.archive == "gzip":
                with gzip.open(resp) as gz:
                    shutil.copyfileobj(gz, out)
            else:
                shutil.copyfileobj(resp, out)
        tmp.replace(target)
        sidecar.write_text(_sha256(target) + "\n")
    return target


def _normalize_snap(raw: Path, out: Path) -> None:
    with open(raw, "r", encoding="utf-8", errors="replace") as fh, \
            open(out, "w", encoding="utf-8", newline="\n") as dst:
        for ln, line in enumerate(fh, start=1):
            if line.startswith("#"):
                continue
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 3:
                raise ValueError(
                    f"{raw}: line {ln}: expected 'src dst sign', got {line.rstrip()!r}")
            if parts[2] not in ("-1", "1", "+1"):
                raise ValueError(
                    f"{raw}: line {ln}: sign must be -1 or 1, got {parts[2]!r}")
            sign = "1" if parts[2] in ("1", "+1") else "-1"
            dst.write(f"{parts[0]} {parts[1]} {sign}\n")


def _normalize_wiki_election(raw: Path, out: Path) -> None:
    """Vote records to edges: each V line is voter -> current candidate
    with the vote as sign; neutral (0) votes produce no edge. Duplicate
    votes are passed through for the graph builder to collapse."""
    candidate = None
    with open(raw, "r", encoding="utf-8", errors="replace") as fh, \
            open(out, "w", encoding="utf-8", newline="\n") as dst:
        for ln, line in enumerate(fh, start=1):
            if line.startswith("#") or not line.strip():
                continue
            tag, _, rest = line.partition("\t")
            if tag == "U":
                fields = rest.split("\t")
                if not fields or not fields[0].strip():
                    raise ValueError(f"{raw}: line {ln}: malformed candidate record")
                candidate = fields[0].strip()
            elif tag == "V":
                fields = rest.split("\t")
                if len(fields) < 2:
                    raise ValueError(f"{raw}: line {ln}: malformed vote record")
                vote, voter = fields[0].strip(), fields[1].strip()
                if candidate is None:
                    raise ValueError(
                        f"{raw}: line {ln}: vote record before any candidate record")
                if vote not in ("-1", "0", "1"):
                    raise ValueError(
                        f"{raw}: line {ln}: vote must be -1, 0 or 1, got {vote!r}")
                if vote == "0":
                    continue
                dst.write(f"{voter} {candidate} {vote}\n")
            # E/T/N records carry election metadata we do not need


def normalize(name: str, raw: Path | str, out: Path | str | None = None) -> Path:
    """Convert a raw dataset file into the canonical edge-list format."""
    desc = descriptor(name)
    raw = Path(raw)
    out = Path(out) if out is not None else raw.parent / "edges.txt"
    tmp = out.with_suffix(".part")
    if desc.fmt == "snap":
        _normalize_snap(raw, tmp)
    else:
        _normalize_wiki_election(raw, tmp)
    tmp.replace(out)
    return out


def ingest(name: str, cache_dir, url: str | None = None) -> Path:
    """Fetch + normalize; returns the canonical edge-list path."""
    raw = fetch(name, cache_dir, url=url)
    return normalize(name, raw, canonical_path(name, cache_dir))

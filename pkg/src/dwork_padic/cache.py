"""On-disk cache of Gamma_p sweep results, one JSON file per (p, M)."""
from __future__ import annotations

import hashlib
import json
import logging
import os
from fractions import Fraction
from pathlib import Path

from .padic import PadicApprox

log = logging.getLogger(__name__)


def _checksum(p: int, M: int, reps: list[str], residues: list[str]) -> str:
    body = json.dumps({"p": p, "M": M, "reps": reps, "residues": residues},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


class GammaStore:
    def __init__(self, cache_dir: str | os.PathLike):
        self.dir = Path(cache_dir)

    def path(self, p: int, M: int) -> Path:
        return self.dir / f"gamma_p{p}_M{M}.json"

    def load(self, p: int, M: int) -> dict[Fraction, PadicApprox]:
        path = self.path(p, M)
        if not path.exists():
            return {}
        try:
            doc = json.loads(path.read_text())
            reps, residues = doc["reps"], doc["residues"]
            if (doc["p"], doc["M"]) != (p, M) or len(reps) != len(residues):
                raise ValueError("key or length mismatch")
            if doc["checksum"] != _checksum(p, M, reps, residues):
                raise ValueError("checksum mismatch")
            pm = p ** M
            out = {}
            for x, v in zip(reps, residues):
                n = int(v)
                if not 0 <= n < pm:
                    raise ValueError(f"residue {v} out of range")
                out[Fraction(x)] = PadicApprox(p, M, n)
            return out
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("corrupt gamma cache %s (%s); recomputing", path, exc)
            return {}

    def save(self, p: int, M: int, values: dict[Fraction, PadicApprox]) -> None:
        self.dir.mkdir(parents=True, exist_ok=True)
        keys = sorted(values)
        reps = [str(x) for x in keys]
        residues = [str(values[x].residue) for x in keys]
        doc = {"p": p, "M": M, "reps": reps, "residues": residues,
               "checksum": _checksum(p, M, reps, residues)}
        tmp = self.path(p, M).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True))
        tmp.replace(self.path(p, M))

    def entries(self) -> list[tuple[int, int, Path]]:
        out = []
        for path in sorted(self.dir.glob("gamma_p*_M*.json")):
            stem = path.stem[len("gamma_p"):]
            p, M = stem.split("_M")
            out.append((int(p), int(M), path))
        return out

    def clear(self) -> int:
        entries = self.entries()
        for _, _, path in entries:
            path.unlink()
        return len(entries)

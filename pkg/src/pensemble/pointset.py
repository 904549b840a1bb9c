"""Point-set files and deterministic JSON serialization.

Floats are written with 17 significant digits so every double round-trips
bit-for-bit; the stdlib encoder offers no hook for that, hence the small
emitter here. Complex vectors serialize as per-coordinate [re, im] pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "PointSetFile",
    "SPACE_PROJECTIVE",
    "SPACE_SPHERE",
    "format_float",
    "dumps",
    "pointset_to_json",
    "pointset_from_json",
    "write_pointset",
    "read_pointset",
]

SPACE_PROJECTIVE = "CP"
SPACE_SPHERE = "S"


def format_float(x: float) -> str:
    """Decimal form with 17 significant digits (lossless for doubles)."""
    if not math.isfinite(x):
        raise ValueError("only finite numbers are serialized")
    return format(float(x), ".17g")


def _emit(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(f"{json.dumps(str(k))}:{_emit(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Compact JSON with 17-significant-digit floats and stable key order."""
    return _emit(obj) + "\n"


@dataclass(frozen=True, eq=False)
class PointSetFile:
    """On-disk point set: projective representatives ("CP") or sphere points ("S")."""

    space: str
    d: int
    seed: int
    points: np.ndarray  # (n, d+1) complex
    L: Optional[int] = None  # CP only
    k: Optional[int] = None  # S only

    def __post_init__(self) -> None:
        if self.space not in (SPACE_PROJECTIVE, SPACE_SPHERE):
            raise ValueError(f"space must be 'CP' or 'S', got {self.space!r}")
        if self.space == SPACE_PROJECTIVE and self.L is None:
            raise ValueError("CP point sets record the degree L")
        if self.space == SPACE_SPHERE and self.k is None:
            raise ValueError("sphere point sets record the fiber size k")
        pts = np.asarray(self.points, dtype=np.complex128)
        if pts.ndim != 2 or pts.shape[1] != self.d + 1:
            raise ValueError(f"points must be (n, d+1) with d={self.d}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


def _encode_points(points: np.ndarray) -> list:
    return [
        [[float(c.real), float(c.imag)] for c in row]
        for row in points
    ]


def _decode_points(rows: list) -> np.ndarray:
    out = np.array(
        [[complex(pair[0], pair[1]) for pair in row] for row in rows],
        dtype=np.complex128,
    )
    return out


def pointset_to_json(ps: PointSetFile) -> str:
    doc: dict = {"space": ps.space, "d": ps.d}
    if ps.space == SPACE_PROJECTIVE:
        doc["L"] = ps.L
    else:
        doc["k"] = ps.k
    doc["seed"] = ps.seed
    doc["points"] = _encode_points(ps.points)
    return dumps(doc)


def pointset_from_json(text: str) -> PointSetFile:
    doc = json.loads(text)
    for key in ("space", "d", "seed", "points"):
        if key not in doc:
            raise ValueError(f"point-set file is missing the {key!r} field")
    return PointSetFile(
        space=doc["space"],
        d=int(doc["d"]),
        seed=int(doc["seed"]),
        points=_decode_points(doc["points"]),
        L=int(doc["L"]) if "L" in doc else None,
        k=int(doc["k"]) if "k" in doc else None,
    )


def write_pointset(path, ps: PointSetFile) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(pointset_to_json(ps))


def read_pointset(path) -> PointSetFile:
    with open(path, "r", encoding="utf-8") as handle:
        return pointset_from_json(handle.read())

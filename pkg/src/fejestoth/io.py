"""JSON/CSV serialization with 17 significant digits and run manifests."""
from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path

import numpy as np

from .core import DiscreteMeasure, PointConfiguration, validate_measure


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialize {x!r} as JSON")
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """json.dumps with every float written to 17 significant digits."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, (bool, np.bool_)) or o is None:
            return json.dumps(bool(o) if o is not None else None)
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return _fmt_float(float(o))
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, np.ndarray):
            o = o.tolist()
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k))}: {enc(v, level + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def config_to_dict(obj) -> dict:
    d = {"dim": obj.dim, "points": obj.points.tolist()}
    if isinstance(obj, DiscreteMeasure):
        d["weights"] = obj.weights.tolist()
    return d


def measure_from_dict(data: dict) -> DiscreteMeasure:
    try:
        dim = int(data["dim"])
        points = data["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed configuration JSON: {exc}") from None
    return validate_measure(points, dim, data.get("weights"))


def config_from_dict(data: dict) -> PointConfiguration:
    mu = measure_from_dict(data)
    if "weights" in data and not np.allclose(mu.weights, 1.0 / mu.n, rtol=0, atol=1e-15):
        raise ValueError("a point configuration needs uniform weights")
    return PointConfiguration(mu.dim, mu.points)


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_text(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def csv_rows(header, rows) -> str:
    out = [",".join(header)]
    for r in rows:
        out.append(",".join(_fmt_float(float(v)) if isinstance(v, (float, np.floating)) else str(v) for v in r))
    return "\n".join(out) + "\n"


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()

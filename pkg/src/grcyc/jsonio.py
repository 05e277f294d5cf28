"""JSON interchange: complex numbers as [re, im], subsets as "1,3,4" strings."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from .dynamics import PosetLabeling, Tableau
from .errors import ConfigError, ShapeMismatch
from .grassmann import PluckerVector, as_matrix, parse_subset, plucker_from_matrix


def parse_complex(value: Any) -> complex:
    """Accept a number, an [re, im] pair, or a string such as "-1+i", "-1,1" or "2"."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"complex pair must have two entries, got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str) and "," in value:
        return parse_complex(value.split(","))
    if isinstance(value, str):
        s = value.strip().replace(" ", "").replace("i", "j").replace("−", "-")
        if s.endswith("j") and s[:-1] in ("", "+", "-") or s[-2:] in ("+j", "-j"):
            s = s[:-1] + "1j"
        try:
            return complex(s)
        except ValueError as exc:
            raise ConfigError(f"cannot parse complex number {value!r}") from exc
    return complex(value)


def complex_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def round_floats(obj: Any, digits: int = 12) -> Any:
    """Recursively round floats to ``digits`` significant digits for stable output."""
    if isinstance(obj, float):
        if obj == 0 or not np.isfinite(obj):
            return 0.0 if obj == 0 else obj
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {k: round_floats(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, digits) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def matrix_to_json(A) -> dict:
    A = as_matrix(A)
    return {"k": A.shape[0], "n": A.shape[1], "rows": [[complex_pair(z) for z in row] for row in A]}


def matrix_from_json(data: Any) -> np.ndarray:
    rows = data["rows"] if isinstance(data, dict) else data
    A = np.array([[parse_complex(z) for z in row] for row in rows], dtype=complex)
    if isinstance(data, dict) and "k" in data and A.shape != (data["k"], data["n"]):
        raise ShapeMismatch(f"declared shape ({data['k']}, {data['n']}) but rows are {A.shape}")
    return A


def plucker_to_json(P: PluckerVector) -> dict:
    return {"k": P.k, "n": P.n, "plucker": P.to_json()}


def plucker_from_json(data: Any) -> PluckerVector:
    """A wrapped {"k","n","plucker"} object, a bare subset map, or a matrix file."""
    if isinstance(data, dict) and "rows" in data:
        return plucker_from_matrix(matrix_from_json(data))
    if isinstance(data, dict) and "plucker" in data:
        k, n, values = int(data["k"]), int(data["n"]), data["plucker"]
    elif isinstance(data, dict):
        values = data
        keys = [parse_subset(key) for key in values]
        if not keys:
            raise ConfigError("empty Plücker map")
        k, n = len(keys[0]), max(max(I) for I in keys)
    else:
        raise ConfigError("unrecognised point file")
    return PluckerVector.from_mapping(k, n, {key: parse_complex(v) for key, v in values.items()})


def tableau_from_json(data: Any) -> tuple[Tableau, Any]:
    if isinstance(data, dict):
        return Tableau(tuple(tuple(r) for r in data["rows"])), data.get("n")
    return Tableau(tuple(tuple(r) for r in data)), None


def labels_from_json(data: Any, k: int, n: int, q: complex) -> PosetLabeling:
    if isinstance(data, dict) and "labels" in data:
        data = data["labels"]
    values = {}
    for key, v in data.items():
        r, s = parse_subset(key) if isinstance(key, str) else key
        values[(r, s)] = parse_complex(v)
    return PosetLabeling(k, n, values, q)

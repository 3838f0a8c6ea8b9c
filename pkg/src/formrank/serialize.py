"""JSON files for form spaces and reports.

A form-space file is::

    {"field": {"p": 2, "k": 2, "modulus": [1, 1, 1]},
     "n": 3, "kind": "symmetric",
     "basis": [matrix, ...],
     "params": {...}}

with each matrix an n x n array of coefficient arrays (length k, lowest
degree first, entries in [0, p)).  Output is canonical: keys sorted, no
whitespace, one trailing newline, so writing a file that was just read
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .formspace import KINDS, FormSpace
from .gf import GF

__all__ = ["FormatError", "formspace_to_dict", "formspace_from_dict", "dumps", "loads",
           "write_formspace", "read_formspace", "canonical_json", "provenance"]


class FormatError(ValueError):
    """A form-space file could not be parsed or failed validation."""


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_default) + "\n"


def _default(obj: Any) -> Any:
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def formspace_to_dict(m: FormSpace) -> dict:
    f = m.field
    digits = np.array([f.digits(a) for a in range(f.order)], dtype=np.int64) if f.k > 1 else None
    basis = []
    for mat in m.basis:
        if digits is None:
            basis.append([[[int(x)] for x in row] for row in mat])
        else:
            basis.append(digits[mat].tolist())
    out = {"field": f.to_dict(), "n": m.n, "kind": m.kind, "basis": basis}
    if m.params:
        out["params"] = m.params
    return out


def formspace_from_dict(data: dict) -> FormSpace:
    try:
        field = GF.from_dict(data["field"])
        n = int(data["n"])
        kind = data["kind"]
        if kind not in KINDS:
            raise FormatError(f"unknown kind {kind!r}")
        raw = np.array(data["basis"], dtype=np.int64)
        if raw.size == 0:
            raw = raw.reshape(0, n, n, field.k)
        if raw.ndim != 4 or raw.shape[1:] != (n, n, field.k):
            raise FormatError(f"basis must have shape (d, {n}, {n}, {field.k}), got {raw.shape}")
        if raw.size and (raw.min() < 0 or raw.max() >= field.p):
            raise FormatError("coefficients must lie in [0, p)")
        weights = field.p ** np.arange(field.k, dtype=np.int64)
        return FormSpace(field, n, kind, raw @ weights, dict(data.get("params") or {}))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid form-space data: {exc}") from exc


def dumps(m: FormSpace) -> str:
    return canonical_json(formspace_to_dict(m))


def loads(text: str) -> FormSpace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise FormatError("top level must be an object")
    return formspace_from_dict(data)


def write_formspace(m: FormSpace, path: str | Path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8")


def read_formspace(path: str | Path) -> FormSpace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def provenance(m: FormSpace, **extra: Any) -> dict:
    """Field, construction parameters and tool version for a report."""
    out = {"tool": {"name": "formrank", "version": __version__}, "field": m.field.to_dict(),
           "n": m.n, "d": m.d, "kind": m.kind}
    if m.params:
        out["params"] = m.params
    out.update(extra)
    return out

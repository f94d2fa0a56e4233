"""Reading and writing configurations and Gram matrices.

Configurations are stored as JSON ``{"d": int, "n": int, "vectors": [[...]]}``
(row-major) or as CSV with one vector per line. Gram matrices are stored as
JSON ``{"n": int, "entries": [[...]]}``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .core import Configuration, GramMatrix


class FormatError(ValueError):
    """Malformed configuration or Gram file."""


def configuration_to_dict(X: Configuration) -> dict:
    return {"d": X.dim, "n": X.n, "vectors": X.vectors.tolist()}


def configuration_from_dict(payload: dict) -> Configuration:
    try:
        vectors = np.asarray(payload["vectors"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad configuration payload: {exc}") from exc
    if vectors.ndim != 2:
        raise FormatError("'vectors' must be a list of equal-length lists")
    for key, expected in (("n", vectors.shape[0]), ("d", vectors.shape[1])):
        if key in payload and int(payload[key]) != expected:
            raise FormatError(f"'{key}' = {payload[key]} does not match vectors shape {vectors.shape}")
    return Configuration(vectors)


def gram_to_dict(G: GramMatrix) -> dict:
    return {"n": G.n, "entries": G.entries.tolist()}


def gram_from_dict(payload: dict) -> GramMatrix:
    try:
        entries = np.asarray(payload["entries"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad Gram payload: {exc}") from exc
    if "n" in payload and int(payload["n"]) != entries.shape[0]:
        raise FormatError("'n' does not match entries")
    return GramMatrix(entries)


def _read_csv(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].lstrip().startswith("#")]
    try:
        vectors = np.array([[float(c) for c in r] for r in rows])
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if vectors.ndim != 2 or vectors.size == 0:
        raise FormatError(f"{path}: rows must be non-empty and of equal length")
    return Configuration(vectors)


def load_configuration(path) -> Configuration:
    """Load a configuration from ``.json`` or ``.csv``.

    Raises :class:`FormatError` for unparsable files and
    :class:`framepot.core.NonUnitRowError` for rows that are not unit length.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return _read_csv(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return configuration_from_dict(payload)


def save_configuration(X: Configuration, path) -> Path:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            for row in X.vectors:
                writer.writerow([repr(float(v)) for v in row])
    else:
        path.write_text(json.dumps(configuration_to_dict(X), indent=2))
    return path


def load_gram(path) -> GramMatrix:
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc
    return gram_from_dict(payload)


def save_gram(G: GramMatrix, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(gram_to_dict(G), indent=2))
    return path

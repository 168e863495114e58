"""JSON input files for groups and quantum groups.

Group file:
    { "order": n, "mult_table": [[...]], "metric": [[...]]?, "length": [...]?,
      "irreps": [ { "dim": d, "matrices_over_A": [[[coeff ...] ...] ...] } ]? }

Quantum-group file:
    { "dim": n, "mult": ..., "comult": ..., "unit": ..., "star": ...,
      "counit": ..., "antipode": ..., "rep": [...], "irreps": [...]? }

Complex numbers appear as plain reals or two-element [re, im] arrays at the
innermost level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .corep import Corepresentation, default_irreps
from .errors import ConfigError, StructureError
from .hopf import FiniteQuantumGroup, _solve_haar, function_algebra, group_algebra


class ParseError(ConfigError):
    """JSON syntax error, carrying line and column."""


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _as_complex(node) -> np.ndarray:
    """Nested lists with [re, im] leaves (or bare reals) to a complex array."""

    def convert(x):
        if isinstance(x, (int, float)):
            return complex(x)
        if isinstance(x, list):
            if len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
                return complex(x[0], x[1])
            return [convert(v) for v in x]
        raise StructureError(f"cannot interpret {x!r} as a complex entry")

    return np.asarray(convert(node), dtype=complex)


@dataclass(frozen=True, eq=False)
class LoadedInput:
    algebra: FiniteQuantumGroup
    irreps: list | None          # None means "not supplied"; fall back to built-ins
    source: str                  # "group" | "quantum_group"

    def irreps_or_default(self):
        if self.irreps is not None:
            return self.irreps
        return default_irreps(self.algebra)


def load_input(path: str, family: str = "auto") -> LoadedInput:
    """Load either file format; ``family`` picks F(G) or C*(G) for group files."""
    data = _load_json(path)
    if not isinstance(data, dict):
        raise StructureError(f"{path}: top level must be an object")
    if "mult_table" in data or "order" in data:
        return _load_group(path, data, family)
    if "dim" in data:
        return _load_quantum_group(path, data)
    raise StructureError(f"{path}: neither a group file (mult_table) nor a quantum-group file (dim)")


def _load_group(path: str, data: dict, family: str) -> LoadedInput:
    try:
        order = int(data["order"])
        table = np.asarray(data["mult_table"], dtype=int)
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"{path}: group files need integer 'order' and 'mult_table'") from exc
    if table.shape != (order, order):
        raise StructureError(f"{path}: mult_table must be {order}x{order}, got {table.shape}")
    metric = np.asarray(data["metric"], dtype=float) if "metric" in data else None
    length = np.asarray(data["length"], dtype=float) if "length" in data else None

    if family == "auto":
        family = "group" if (length is not None and metric is None) else "function"
    if family == "function":
        algebra = function_algebra(table, metric=metric)
    elif family == "group":
        algebra = group_algebra(table, length=length)
    else:
        raise ConfigError(f"unknown family {family!r} (use 'function', 'group' or 'auto')")

    irreps = _parse_irreps(path, data, algebra.dim) if "irreps" in data else None
    return LoadedInput(algebra=algebra, irreps=irreps, source="group")


def _load_quantum_group(path: str, data: dict) -> LoadedInput:
    required = ["dim", "mult", "comult", "unit", "star", "counit", "antipode", "rep"]
    missing = [key for key in required if key not in data]
    if missing:
        raise StructureError(f"{path}: quantum-group file is missing {missing}")
    n = int(data["dim"])
    mult = _as_complex(data["mult"]).reshape(n, n, n)
    comult = _as_complex(data["comult"]).reshape(n, n, n)
    unit = _as_complex(data["unit"]).reshape(n)
    star = _as_complex(data["star"]).reshape(n, n)
    counit = _as_complex(data["counit"]).reshape(n)
    antipode = _as_complex(data["antipode"]).reshape(n, n)
    rep = _as_complex(data["rep"])
    if rep.ndim != 3 or rep.shape[0] != n or rep.shape[1] != rep.shape[2]:
        raise StructureError(f"{path}: rep must be a list of n square matrices, got {rep.shape}")
    haar = _solve_haar(comult, unit, n)
    algebra = FiniteQuantumGroup(dim=n, mult=mult, unit=unit, star=star, comult=comult,
                                 counit=counit, antipode=antipode, rep=rep, haar=haar,
                                 kind="custom", label=f"custom({path})")
    irreps = _parse_irreps(path, data, n) if "irreps" in data else None
    return LoadedInput(algebra=algebra, irreps=irreps, source="quantum_group")


def _parse_irreps(path: str, data: dict, n: int) -> list:
    out = []
    for k, node in enumerate(data["irreps"]):
        try:
            d = int(node["dim"])
            u = _as_complex(node["matrices_over_A"]).reshape(d, d, n)
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(
                f"{path}: irrep {k} needs 'dim' and 'matrices_over_A' of shape (d, d, {n})") from exc
        out.append(Corepresentation(u=u, label=node.get("label", f"irrep_{k}")))
    return out


def dump_group_file(path: str, table, metric=None, length=None, irreps=None) -> None:
    """Write a group input file (used by the demos and tests)."""
    table = np.asarray(table, dtype=int)
    payload: dict = {"order": int(table.shape[0]), "mult_table": table.tolist()}
    if metric is not None:
        payload["metric"] = np.asarray(metric, dtype=float).tolist()
    if length is not None:
        payload["length"] = np.asarray(length, dtype=float).tolist()
    if irreps is not None:
        payload["irreps"] = _encode_irreps(irreps)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)


def dump_quantum_group_file(path: str, algebra: FiniteQuantumGroup, irreps=None) -> None:
    """Write the structure tensors of an algebra as a quantum-group input file."""
    payload = {
        "dim": algebra.dim,
        "mult": _encode_complex(algebra.mult),
        "comult": _encode_complex(algebra.comult),
        "unit": _encode_complex(algebra.unit),
        "star": _encode_complex(algebra.star),
        "counit": _encode_complex(algebra.counit),
        "antipode": _encode_complex(algebra.antipode),
        "rep": _encode_complex(algebra.rep),
    }
    if irreps is not None:
        payload["irreps"] = _encode_irreps(irreps)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=1)


def _encode_irreps(irreps) -> list:
    return [
        {"dim": pi.dim, "matrices_over_A": _encode_complex(pi.u), "label": pi.label}
        for pi in irreps
    ]


def _encode_complex(arr: np.ndarray):
    arr = np.asarray(arr, dtype=complex)
    re, im = arr.real, arr.imag
    out = np.stack([re, im], axis=-1)
    return out.tolist()

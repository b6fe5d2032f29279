"""JSON file formats for models, kernels and reports.

All indices are 0-based.  A kernel file looks like

    {"m": 2, "n": 4, "entries": [{"set": [0, 1], "value": 0.5}, ...]}

and a model file is either {"probs": [p0, p1, ...]} or
{"homogeneous": p, "n": n}.  Chaos vectors serialize as a list of kernel
records ordered by rising order.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .chaos import ChaosVector
from .errors import FormatError
from .kernels import Kernel
from .model import RademacherModel


def kernel_to_dict(kern: Kernel, provenance: dict | None = None) -> dict:
    out: dict[str, Any] = {
        "m": kern.order,
        "n": kern.horizon,
        "entries": [
            {"set": list(key), "value": val} for key, val in sorted(kern.coeffs.items())
        ],
    }
    if provenance:
        out["provenance"] = provenance
    return out


def kernel_from_dict(data: dict) -> Kernel:
    try:
        m = int(data["m"])
        n = int(data["n"])
        entries = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"kernel record needs integer 'm', 'n' and 'entries': {exc}")
    coeffs = {}
    for i, entry in enumerate(entries):
        try:
            key = tuple(int(x) for x in entry["set"])
            val = float(entry["value"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"entry {i} is malformed: {exc}")
        if key in coeffs:
            raise FormatError(f"entry {i} repeats subset {list(key)}")
        coeffs[key] = val
    try:
        return Kernel(m, n, coeffs)
    except Exception as exc:
        raise FormatError(f"kernel record invalid: {exc}")


def model_to_dict(model: RademacherModel) -> dict:
    probs = set(model.probs)
    if len(probs) == 1:
        return {"homogeneous": model.probs[0], "n": model.n}
    return {"probs": list(model.probs)}


def model_from_dict(data: dict) -> RademacherModel:
    if "probs" in data:
        try:
            return RademacherModel(tuple(float(p) for p in data["probs"]))
        except FormatError:
            raise
        except Exception as exc:
            raise FormatError(f"model record invalid: {exc}")
    if "homogeneous" in data:
        try:
            return RademacherModel.homogeneous(float(data["homogeneous"]), int(data["n"]))
        except Exception as exc:
            raise FormatError(f"model record invalid: {exc}")
    raise FormatError("model record needs either 'probs' or 'homogeneous' + 'n'")


def chaos_to_list(F: ChaosVector) -> list[dict]:
    return [kernel_to_dict(kern) for kern in F.kernels]


def chaos_from_list(records: list[dict]) -> ChaosVector:
    kernels = tuple(kernel_from_dict(rec) for rec in records)
    if not kernels:
        raise FormatError("chaos record must contain at least the order-0 kernel")
    return ChaosVector(kernels[0].horizon, kernels)


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise FormatError(f"{path}: {exc}")


def dump_json(data: Any, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_kernel(path: str | Path) -> Kernel:
    return kernel_from_dict(load_json(path))


def load_model(path: str | Path) -> RademacherModel:
    return model_from_dict(load_json(path))

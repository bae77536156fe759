"""JSON state/multipole files and CSV grid output, all numbers at 17 significant digits."""
from __future__ import annotations

import json
import math

import numpy as np

from .harmonics import SpinState
from .multipole import MultipoleSet


class MalformedInput(ValueError):
    pass


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    return format(x, ".17g")


def _dump(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {_dump(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, float, np.floating, np.integer)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_dump(v) for v in obj) + "]"
        return "[\n" + ",\n".join(f"{pad}  {_dump(v, indent + 1)}" for v in obj) + f"\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    return json.dumps(obj)


def dumps(obj) -> str:
    return _dump(obj) + "\n"


def state_to_dict(s: SpinState, metadata: dict | None = None) -> dict:
    d = {
        "degree": s.two_j,
        "coefficients": [[float(c.real), float(c.imag)] for c in s.coeffs],
    }
    if metadata:
        d["metadata"] = metadata
    return d


def multipole_to_dict(mp: MultipoleSet, residual: dict | None = None) -> dict:
    return {
        "degree": mp.degree,
        "amplitude": mp.amplitude,
        "directions": [[float(v) for v in d.as_array()] for d in mp.directions],
        "residual": residual or {},
    }


def _number(x, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise MalformedInput(f"{what} must be a number, got {x!r}")
    if not math.isfinite(x):
        raise MalformedInput(f"{what} must be finite")
    return float(x)


def _integer(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise MalformedInput(f"{what} must be a nonnegative integer, got {x!r}")
    return x


def state_from_dict(d) -> SpinState:
    if not isinstance(d, dict) or "degree" not in d or "coefficients" not in d:
        raise MalformedInput("state file needs 'degree' (2j) and 'coefficients'")
    two_j = _integer(d["degree"], "degree")
    coeffs = d["coefficients"]
    if not isinstance(coeffs, list) or len(coeffs) != two_j + 1:
        raise MalformedInput(f"expected {two_j + 1} coefficient pairs for degree 2j={two_j}")
    vals = []
    for i, pair in enumerate(coeffs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedInput(f"coefficient {i} must be a [re, im] pair")
        vals.append(complex(_number(pair[0], "re"), _number(pair[1], "im")))
    return SpinState(two_j, np.array(vals))


def multipole_from_dict(d) -> MultipoleSet:
    if not isinstance(d, dict) or not {"degree", "amplitude", "directions"} <= d.keys():
        raise MalformedInput("multipole file needs 'degree', 'amplitude' and 'directions'")
    j = _integer(d["degree"], "degree")
    amp = _number(d["amplitude"], "amplitude")
    dirs = d["directions"]
    if not isinstance(dirs, list) or len(dirs) != j:
        raise MalformedInput(f"expected {j} directions")
    vecs = []
    for i, v in enumerate(dirs):
        if not isinstance(v, list) or len(v) != 3:
            raise MalformedInput(f"direction {i} must be an [x, y, z] triple")
        a = np.array([_number(c, "direction component") for c in v])
        if abs(np.linalg.norm(a) - 1) > 1e-9:
            raise MalformedInput(f"direction {i} is not a unit vector")
        vecs.append(a)
    return MultipoleSet(j, tuple(vecs), amp)


def load(path: str):
    """Read a state or multipole file; the presence of 'directions' decides which."""
    try:
        with open(path) as fh:
            d = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    if isinstance(d, dict) and "directions" in d:
        return multipole_from_dict(d)
    return state_from_dict(d)


def grid_csv(theta, phi, values) -> str:
    """Rows of theta, phi, value, theta-major; complex values as ``re+imj``."""
    lines = ["theta,phi,value"]
    values = np.asarray(values)
    cplx = np.iscomplexobj(values)
    for i, t in enumerate(theta):
        for k, p in enumerate(phi):
            v = values[i, k]
            if cplx:
                sign = "+" if v.imag >= 0 else "-"
                cell = f"{fmt(v.real)}{sign}{fmt(abs(v.imag))}j"
            else:
                cell = fmt(v)
            lines.append(f"{fmt(t)},{fmt(p)},{cell}")
    return "\n".join(lines) + "\n"

"""JSON and CSV serialization of reports and nodal sets.

JSON output is deterministic: keys keep insertion order, floats are written
with 15 significant digits and non-finite floats become ``null``.
"""

import csv
import dataclasses
import json
import math

import numpy as np

SIGNIFICANT = 15


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(f"{x:.{SIGNIFICANT}g}")
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _clean(dataclasses.asdict(obj))
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    """Deterministic JSON text for plain data, numpy values and dataclasses."""
    return json.dumps(_clean(obj), indent=2, allow_nan=False) + "\n"


def nodal_set_to_dict(ns):
    return {
        "grid": list(ns.grid_shape),
        "n_components": ns.n_components,
        "closed": list(ns.closed),
        "diagnostics": ns.diagnostics,
        "chains": [
            {"component": int(c), "pole_incident": bool(p), "points": chain}
            for chain, c, p in zip(ns.chains, ns.chain_component, ns.pole_incident)
        ],
    }


def write_csv(ns, fh):
    """Write polylines as rows (theta, phi, component_id) to an open text file."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["theta", "phi", "component_id"])
    for chain, comp in zip(ns.chains, ns.chain_component):
        for theta, phi in chain:
            w.writerow([f"{theta:.{SIGNIFICANT}g}", f"{phi:.{SIGNIFICANT}g}", int(comp)])


def read_csv(fh):
    """Inverse of :func:`write_csv`: arrays (theta, phi, component_id)."""
    rows = list(csv.DictReader(fh))
    theta = np.array([float(r["theta"]) for r in rows])
    phi = np.array([float(r["phi"]) for r in rows])
    comp = np.array([int(r["component_id"]) for r in rows], dtype=np.int64)
    return theta, phi, comp

"""Deterministic file writers for CLI artifacts.

All formats embed the run configuration: JSON carries it as an object,
CSV and PPM as leading '#' comment lines. Equal configurations produce
byte-identical files (sorted keys, repr-exact floats, no timestamps).
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = ["config_json", "write_csv", "write_json_field", "write_ppm"]


def config_json(config: Mapping) -> str:
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence],
              config: Mapping) -> None:
    lines = [f"# config: {config_json(config)}", ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(x) for x in row))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json_field(path: str, field, config: Mapping) -> None:
    """Field values in row-major (theta-major) order plus a metadata block."""
    doc = {
        "kind": "psi_field",
        "config": dict(config),
        "beta": field.beta,
        "depth": field.depth,
        "r_start": field.r_start,
        "theta_res": field.grid.theta_res,
        "alpha_res": field.grid.alpha_res,
        "values": [float(v) for v in field.values.ravel(order="C")],
    }
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def write_ppm(path: str, field, config: Mapping) -> None:
    """8-bit binary PPM heatmap: luminance = psi / r_start clipped to [0,1].

    Column x is the theta index; row y counts alpha downward from
    alpha = 1 at the top.
    """
    vals = np.clip(field.values / field.r_start, 0.0, 1.0)
    lum = np.round(255.0 * vals).astype(np.uint8)
    img = lum.T[::-1, :]
    h, w = img.shape
    rgb = np.repeat(img[:, :, None], 3, axis=2)
    header = f"P6\n# config: {config_json(config)}\n{w} {h}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(rgb.tobytes())

#!/usr/bin/env python3
"""Pre-registration run for the disjoint-block isometry tolerance.

Measures max |quasinorm ratio - 1| for the three seeded block systems used by
the acceptance suite and writes the measured value plus the registered
tolerance (measured value with six orders of safety margin, rounded up to a
power of ten) into calibration/tu_isometry.json.  Rerun only to re-register.
"""

import json
import pathlib

import numpy as np

from z2lab.blockop import apply, block_operator_TU
from z2lab.cli import _disjoint_blocks
from z2lab.z2core import Z2Vec, z2_quasinorm

SYSTEMS = [(11, 2), (12, 4), (13, 8)]  # (seed, block width)
N = 256
DRAWS = 200


def measure() -> float:
    worst = 0.0
    for seed, width in SYSTEMS:
        blocks = _disjoint_blocks(N, width, seed)
        m = len(blocks)
        T = block_operator_TU(blocks)
        rng = np.random.default_rng(seed + 100)
        for _ in range(DRAWS):
            omega = np.zeros(N)
            x = np.zeros(N)
            omega[:m] = rng.standard_normal(m)
            x[:m] = rng.standard_normal(m)
            z = Z2Vec(omega, x)
            worst = max(worst, abs(z2_quasinorm(apply(T, z)) / z2_quasinorm(z) - 1.0))
    return worst


def main():
    worst = measure()
    tol = 10.0 ** np.ceil(np.log10(worst * 1e6))
    out = {
        "systems": [{"seed": s, "width": w, "n": N, "draws": DRAWS} for s, w in SYSTEMS],
        "measured_max_deviation": worst,
        "tol_iso": float(tol),
    }
    path = pathlib.Path(__file__).resolve().parents[1] / "calibration" / "tu_isometry.json"
    path.parent.mkdir(exist_ok=True)
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(f"measured {worst:.3e}, registered tol_iso = {tol:g} -> {path}")


if __name__ == "__main__":
    main()

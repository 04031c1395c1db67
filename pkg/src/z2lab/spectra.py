"""Finite-section spectra and resolvent-norm grids on lp.

Finite sections of the averaging operator have spectrum {1/k}, not the
disk the infinite operator has, so disk membership is probed the standard
pseudospectral way: growth of ||(lambda I - A_n)^{-1}||_p across section
sizes.  Complex shifts are supported for p = 2 (exact via smallest singular
value); other p use explicitly formed inverses at real shifts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NoConvergence, SingularShift
from .normest import GROWTH_CLASSES, growth_trend, opnorm_p
from .seqspace import check_p
from .zoo import cesaro

EIG_DIM_CAP = 2048

# Resolvent values at or beyond this are numerically indistinguishable from a
# singular shift (the shift sits within rounding of a section eigenvalue) and
# are treated as off-scale.
OFF_SCALE = 1e12


def eigenvalues(A, cap: int = EIG_DIM_CAP) -> np.ndarray:
    """All eigenvalues (with multiplicity) of a dense matrix.

    Symmetric input (bit-identical transpose) routes to the symmetric solver
    and returns reals; otherwise the general dense solver returns complex.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got {A.shape}")
    if A.shape[0] > cap:
        raise ValueError(f"dimension {A.shape[0]} exceeds cap {cap}")
    try:
        if np.array_equal(A, A.T):
            return scipy.linalg.eigvalsh(A)
        return scipy.linalg.eigvals(A)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NoConvergence(f"dense eigensolver failed: {exc}") from exc


def resolvent_norm(A, lam, p) -> float:
    """||(lambda I - A)^{-1}||_p at one shift.

    Real shifts: the inverse is formed explicitly and measured with opnorm_p
    (a lower-bound estimate, exact for p = 2 at n <= 512).  Complex shifts
    are supported for p = 2 only, via 1/sigma_min of the shifted matrix.
    Raises SingularShift when the shift hits an eigenvalue exactly.
    """
    A = np.asarray(A, dtype=float)
    p = check_p(p)
    lam = complex(lam)
    n = A.shape[0]
    if lam.imag != 0.0:
        if p != 2.0:
            raise ValueError("complex shifts are supported for p = 2 only")
        M = lam * np.eye(n) - A
        smin = scipy.linalg.svdvals(M)[-1]
        if smin == 0.0:
            raise SingularShift(f"shift {lam} is an exact eigenvalue")
        return float(1.0 / smin)
    M = lam.real * np.eye(n) - A
    try:
        R = scipy.linalg.inv(M)
    except scipy.linalg.LinAlgError as exc:
        raise SingularShift(f"shift {lam.real} is an exact eigenvalue") from exc
    if not np.all(np.isfinite(R)):
        raise SingularShift(f"shift {lam.real} is numerically singular")
    return opnorm_p(R, p)


@dataclass(frozen=True)
class SpectralGrid:
    """Resolvent-norm estimates over a list of shifts (inf marks singular ones)."""

    grid: tuple
    values: tuple
    p: float
    n: int

    def to_csv_rows(self) -> list[tuple[float, float, float]]:
        return [
            (complex(lam).real, complex(lam).imag, val)
            for lam, val in zip(self.grid, self.values)
        ]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "points": [
                {
                    "lam_re": complex(lam).real,
                    "lam_im": complex(lam).imag,
                    "value": val if np.isfinite(val) else "inf",
                }
                for lam, val in zip(self.grid, self.values)
            ],
        }


def resolvent_grid(builder, p, grid, n: int) -> SpectralGrid:
    """Resolvent norms of one section at every grid shift, inf-marked at
    singular shifts; deterministic ordering by grid index."""
    if not len(grid):
        raise ValueError("grid must be nonempty")
    A = np.asarray(builder(n), dtype=float)
    values = []
    for lam in grid:
        try:
            values.append(resolvent_norm(A, lam, p))
        except SingularShift:
            values.append(np.inf)
    return SpectralGrid(grid=tuple(grid), values=tuple(values), p=float(p), n=n)


def _disk_points(p: float, ratio: float, count: int) -> list[complex]:
    """Shifts at |lam - c| = ratio * c about the disk center c = p*/2.

    The real axis offers exactly two such points; p = 2 may continue with
    off-axis points (complex shifts are exact there).
    """
    pstar = p / (p - 1.0)
    c = pstar / 2.0
    d = ratio * c
    pts: list[complex] = [complex(c + d), complex(c - d)]
    if p == 2.0:
        for theta in (np.pi / 2, np.pi / 4, 3 * np.pi / 4):
            pts.append(c + d * np.exp(1j * theta))
    if count > len(pts):
        raise ValueError(
            f"only {len(pts)} sample points available at ratio {ratio} for p={p}"
        )
    return pts[:count]


def _classify(sizes, values) -> tuple[str, str]:
    """Growth/bounded/inconclusive from resolvent values across sizes.

    Shifts within rounding of a section eigenvalue produce off-scale values
    at every size; when at least half the sizes are off-scale the shift is
    in the section spectra themselves, which counts as growth.
    """
    vals = np.asarray(values, dtype=float)
    off = ~np.isfinite(vals) | (vals >= OFF_SCALE)
    if np.count_nonzero(off) * 2 >= vals.size:
        return "growth", "off_scale"
    trend = growth_trend(np.asarray(sizes)[~off], vals[~off])
    if trend.fit in GROWTH_CLASSES:
        return "growth", trend.fit
    if trend.fit == "bounded":
        return "bounded", trend.fit
    return "inconclusive", trend.fit


def cesaro_disk_check(
    p, sizes=(128, 256, 512, 1024), inside_pts: int = 2, outside_pts: int = 2
) -> dict:
    """Pseudospectral check of the averaging operator's spectral disk on lp.

    Samples shifts at radius ratios 0.5 (inside) and 1.5 (outside) of the
    disk |lam - p*/2| <= p*/2, classifies each by resolvent growth across
    section sizes, and records pass/fail per point: inside must classify as
    growth, outside as bounded.
    """
    p = check_p(p)
    if not (1.0 < p < np.inf):
        raise ValueError("the disk check needs 1 < p < inf")
    sizes = [int(n) for n in sizes]
    points = [(lam, "growth") for lam in _disk_points(p, 0.5, inside_pts)]
    points += [(lam, "bounded") for lam in _disk_points(p, 1.5, outside_pts)]

    sections = {n: cesaro(n) for n in sizes}
    records = []
    for lam, expected in points:
        vals = []
        for n in sizes:
            try:
                vals.append(resolvent_norm(sections[n], lam, p))
            except SingularShift:
                vals.append(np.inf)
        classification, fit = _classify(sizes, vals)
        records.append(
            {
                "lam_re": complex(lam).real,
                "lam_im": complex(lam).imag,
                "expected": expected,
                "classified": classification,
                "fit": fit,
                "values": [v if np.isfinite(v) else "inf" for v in vals],
                "passed": classification == expected,
            }
        )
    return {
        "p": p,
        "center": p / (p - 1.0) / 2.0,
        "sizes": sizes,
        "points": records,
        "passed": all(r["passed"] for r in records),
    }

"""Reference observables the landscape is validated against.

Eigenstate densities, participation ratios, folded quasienergy histograms,
rank/linear correlation statistics, peak detection for sweep curves, and
the midgap-mode report used by the topology experiments.  SweepReport is
the common container every experiment serializes to CSV and JSON.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateInputError,
    DimensionError,
    NormalizationError,
)
from .landscape import solve_landscape
from .linalg import (
    DEFAULT_RCOND,
    HERMITICITY_RTOL,
    Operator,
    eig_general,
    eig_hermitian,
    hermiticity_defect,
    weighted_mean_site,
)


def average_right_density(op: Operator) -> np.ndarray:
    """Mean density of all normalized right eigenstates; sums to 1 over sites."""
    eig = eig_general(op)
    weights = np.abs(eig.vectors) ** 2
    weights /= weights.sum(axis=0)
    return weights.mean(axis=1)


def eigenstate_center_of_mass(density: np.ndarray) -> float:
    """Density-weighted mean site index, sites counted 1..N."""
    return weighted_mean_site(density)


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Sample linear correlation coefficient."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1 or xa.size < 2:
        raise DimensionError("pearson needs two equal-length vectors of size >= 2")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    denom = np.sqrt((xc @ xc) * (yc @ yc))
    if denom == 0.0:
        raise DegenerateInputError("pearson is undefined for zero-variance input")
    return float(xc @ yc / denom)


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..N with ties replaced by the mean rank of the tied group."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(values.size, dtype=float)
    sorted_vals = values[order]
    i = 0
    while i < values.size:
        j = i
        while j + 1 < values.size and sorted_vals[j + 1] == sorted_vals[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman(x: np.ndarray, y: np.ndarray) -> float:
    """Rank correlation: pearson of average-tie ranks."""
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    if xa.shape != ya.shape or xa.ndim != 1 or xa.size < 2:
        raise DimensionError("spearman needs two equal-length vectors of size >= 2")
    return pearson(_average_ranks(xa), _average_ranks(ya))


def sambe_ipr(vec: np.ndarray) -> float:
    """Inverse participation ratio sum |c_i|^4 of a normalized vector."""
    v = np.asarray(vec)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-10:
        raise NormalizationError(f"vector norm {norm} is not 1 within 1e-10")
    return float((np.abs(v) ** 4).sum())


def fold_quasienergy(energy, omega: float):
    """Fold an energy into [-omega/2, omega/2); accepts scalars or arrays.

    Half-integer multiples of omega resolve downward so the result stays in
    the half-open interval.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    e = np.asarray(energy, dtype=float)
    folded = e - omega * np.floor(e / omega + 0.5)
    # guard the upper edge against roundoff in the division
    folded = np.where(folded >= 0.5 * omega, folded - omega, folded)
    folded = np.where(folded < -0.5 * omega, folded + omega, folded)
    if np.isscalar(energy) or np.ndim(energy) == 0:
        return float(folded)
    return folded


def floquet_dos(energies: np.ndarray, omega: float, bin_width: float = 0.01):
    """Normalized histogram of folded, omega-rescaled quasienergies.

    Returns (bin centers, density) on uniform bins covering [-1/2, 1/2);
    the density integrates to one.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    if not 0.0 < bin_width < 1.0:
        raise ValueError("bin_width must lie in (0, 1)")
    e = np.asarray(energies, dtype=float)
    if e.size == 0:
        raise DegenerateInputError("cannot histogram an empty energy list")
    x = fold_quasienergy(e, omega) / omega
    n_bins = max(1, int(round(1.0 / bin_width)))
    edges = np.linspace(-0.5, 0.5, n_bins + 1)
    density, _ = np.histogram(x, bins=edges, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, density


def _parabolic_vertex(xs, ys):
    """Vertex of the parabola through three samples; middle sample if flat."""
    coeffs = np.polyfit(xs, ys, 2)
    a, b, c = coeffs
    if a >= 0.0:  # not concave; interpolation would not refine a maximum
        return float(xs[1]), float(ys[1])
    x_star = -0.5 * b / a
    if not xs[0] <= x_star <= xs[2]:
        return float(xs[1]), float(ys[1])
    return float(x_star), float(c - 0.25 * b * b / a)


def detect_peaks(series: np.ndarray, grid: np.ndarray, min_prominence_ratio: float = 0.1) -> list:
    """Prominent strict local maxima of a sampled curve.

    A peak's prominence is its height above the higher of the two flanking
    valley bottoms; peaks below min_prominence_ratio times the global
    maximum are dropped.  Positions and heights are refined by a three-point
    parabola.  Returns a list of (position, height) in grid order.
    """
    s = np.asarray(series, dtype=float)
    g = np.asarray(grid, dtype=float)
    if s.shape != g.shape or s.ndim != 1 or s.size < 3:
        raise DimensionError("detect_peaks needs equal-length 1d series/grid of size >= 3")
    if not 0.0 < min_prominence_ratio < 1.0:
        raise ValueError("min_prominence_ratio must lie in (0, 1)")
    threshold = min_prominence_ratio * float(s.max())
    peaks = []
    for i in range(1, s.size - 1):
        if not (s[i] > s[i - 1] and s[i] > s[i + 1]):
            continue
        left = i
        while left > 0 and s[left - 1] <= s[left]:
            left -= 1
        right = i
        while right < s.size - 1 and s[right + 1] <= s[right]:
            right += 1
        prominence = s[i] - max(s[left], s[right])
        if prominence > threshold:
            peaks.append(_parabolic_vertex(g[i - 1 : i + 2], s[i - 1 : i + 2]))
    return peaks


@dataclass(frozen=True, eq=False)
class MidgapMode:
    """One in-gap eigenpair with its spatial footprint."""

    index: int
    energy: complex
    weight: np.ndarray  # |psi_j|^2, sums to 1
    argmax_site: int  # 1-based
    participation: float  # 1 / sum_j w_j^2


@dataclass(frozen=True, eq=False)
class MidgapReport:
    """Midgap modes of H next to the landscape peak of the same H."""

    modes: list
    landscape_argmax_site: int  # 1-based
    window: float


def estimate_midgap_window(eigenvalues: np.ndarray) -> float:
    """Default midgap window: 10% of the largest gap in the sorted spectrum."""
    e = np.sort(np.asarray(eigenvalues).real)
    if e.size < 2:
        return 0.0
    return 0.1 * float(np.diff(e).max())


def midgap_report(
    op: Operator,
    energy_window: float | None = None,
    rcond: float = DEFAULT_RCOND,
) -> MidgapReport:
    """All eigenpairs of H with |E| inside the midgap window.

    The window defaults to 10% of the largest spectral gap.  Each entry
    carries the site weight profile and its argmax; the report also records
    where the landscape of the same H peaks, which is the colocalization
    cross-reference used by the topology experiments.
    """
    if hermiticity_defect(op.entries) <= HERMITICITY_RTOL:
        eig = eig_hermitian(op)
    else:
        eig = eig_general(op)
    if energy_window is None:
        energy_window = estimate_midgap_window(eig.values)
    if energy_window < 0.0:
        raise ValueError("energy_window must be positive")
    modes = []
    for k in np.flatnonzero(np.abs(eig.values) < energy_window):
        weight = np.abs(eig.vectors[:, k]) ** 2
        weight = weight / weight.sum()
        modes.append(
            MidgapMode(
                index=int(k),
                energy=complex(eig.values[k]),
                weight=weight,
                argmax_site=int(np.argmax(weight)) + 1,
                participation=float(1.0 / (weight @ weight)),
            )
        )
    landscape = solve_landscape(op, rcond)
    return MidgapReport(
        modes=modes,
        landscape_argmax_site=int(np.argmax(landscape.amplitude)) + 1,
        window=float(energy_window),
    )


# ---------------------------------------------------------------------------
# Sweep reports
# ---------------------------------------------------------------------------


@dataclass
class SweepReport:
    """Parameter grid plus per-point observable columns.

    axes maps axis name to its 1d grid (one axis for a line sweep, two for a
    plane; the second axis varies fastest in flattened row order).  Every
    column has one entry per grid point.  NaN entries are only allowed where
    a boolean "degenerate" column marks the row.
    """

    axes: dict
    columns: dict
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise ValueError("SweepReport supports 1d and 2d grids")
        size = self.grid_size
        for name, col in self.columns.items():
            if np.asarray(col).shape != (size,):
                raise ValueError(f"column {name!r} does not match the grid size {size}")
        degenerate = np.asarray(self.columns.get("degenerate", np.zeros(size, dtype=bool)))
        for name, col in self.columns.items():
            bad = np.isnan(np.asarray(col, dtype=float)) & ~degenerate.astype(bool)
            if bad.any():
                raise ValueError(f"column {name!r} has NaN at non-degenerate rows")

    @property
    def grid_size(self) -> int:
        size = 1
        for ax in self.axes.values():
            size *= len(ax)
        return size

    def _rows(self):
        axis_cols = []
        names = list(self.axes)
        if len(names) == 1:
            axis_cols.append(np.asarray(self.axes[names[0]], dtype=float))
        else:
            a0, a1 = (np.asarray(self.axes[n], dtype=float) for n in names)
            axis_cols.append(np.repeat(a0, a1.size))
            axis_cols.append(np.tile(a1, a0.size))
        data = axis_cols + [np.asarray(self.columns[c]) for c in self.columns]
        header = names + list(self.columns)
        return header, data

    def to_csv(self, path) -> None:
        header, data = self._rows()
        with open(path, "w", newline="\n") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for i in range(self.grid_size):
                writer.writerow([format_number(col[i]) for col in data])

    def to_json(self, path) -> None:
        payload = {
            "metadata": self.metadata,
            "axes": {k: list(map(float, v)) for k, v in self.axes.items()},
            "columns": {k: np.asarray(v).tolist() for k, v in self.columns.items()},
        }
        with open(path, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2, default=float)
            fh.write("\n")


def format_number(value) -> str:
    """Full-precision CSV cell: %.17g-style for floats, plain text otherwise."""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)

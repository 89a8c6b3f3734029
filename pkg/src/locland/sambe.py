"""Extended-space lift of a static Hamiltonian plus a periodic drive.

A drive with one tone maps onto a block matrix over harmonic sectors
m = -M..M: sector (m, m') holds the drive block for harmonic m - m', and the
diagonal sectors pick up the ladder shift m * hbar * omega.  Two
incommensurate tones use a pair of harmonic indices with the shift
m1 w1 + m2 w2.  Flat indices run site-fastest, then m1, then m2, so site
profiles come out of a plain reshape.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .linalg import Operator
from .models import FourierDrive

HBAR = 1.0  # dimensionless units throughout; drives are quoted as A / (hbar omega)


@dataclass(frozen=True, eq=False)
class SambeIndexMap:
    """Bijection between flat extended-space indices and (site, harmonics).

    Sites are 0-based array rows here (site n of the physics conventions is
    row n-1); harmonics run in [-M_i, M_i] for each drive tone.
    """

    base_dim: int
    truncations: tuple

    @property
    def sector_count(self) -> int:
        n = 1
        for m in self.truncations:
            n *= 2 * m + 1
        return n

    @property
    def flat_dim(self) -> int:
        return self.base_dim * self.sector_count

    def flatten(self, site: int, *harmonics: int) -> int:
        if len(harmonics) != len(self.truncations):
            raise DimensionError(
                f"expected {len(self.truncations)} harmonic indices, got {len(harmonics)}"
            )
        if not 0 <= site < self.base_dim:
            raise ValueError(f"site {site} out of range [0, {self.base_dim})")
        idx = 0
        for m, trunc in zip(reversed(harmonics), reversed(self.truncations)):
            if not -trunc <= m <= trunc:
                raise ValueError(f"harmonic {m} out of range [-{trunc}, {trunc}]")
            idx = idx * (2 * trunc + 1) + (m + trunc)
        return idx * self.base_dim + site

    def unflatten(self, flat_index: int) -> tuple:
        if not 0 <= flat_index < self.flat_dim:
            raise ValueError(f"flat index {flat_index} out of range [0, {self.flat_dim})")
        site = flat_index % self.base_dim
        rest = flat_index // self.base_dim
        harmonics = []
        for trunc in self.truncations:
            harmonics.append(rest % (2 * trunc + 1) - trunc)
            rest //= 2 * trunc + 1
        return (site, *harmonics)


@dataclass(frozen=True, eq=False)
class SambeOperator:
    """Extended-space operator plus the bookkeeping needed to read it."""

    matrix: Operator
    index_map: SambeIndexMap
    frequencies: tuple
    hbar: float = HBAR


def _place_blocks(mat, drive, sector_shifts, sector_of, n, truncations):
    """Add drive blocks at every sector pair (m, m') with m - m' = key."""
    dropped = []
    for key, block in drive.blocks.items():
        delta = (key,) if isinstance(key, int) else tuple(key)
        placed = False
        for row_sector, row_harm in sector_shifts:
            col_harm = tuple(m - d for m, d in zip(row_harm, delta))
            if all(-t <= m <= t for m, t in zip(col_harm, truncations)):
                col_sector = sector_of(col_harm)
                r0, c0 = row_sector * n, col_sector * n
                mat[r0 : r0 + n, c0 : c0 + n] += block.entries
                placed = True
        if not placed:
            dropped.append(key)
    return dropped


def build_sambe_mono(h0: Operator, drive: FourierDrive, omega: float, truncation: int) -> SambeOperator:
    """Lift h0 plus a single-tone drive onto harmonics m = -M..M.

    Diagonal sectors hold h0 + m omega I; sector (m, m') holds the drive
    block for harmonic m - m' where one exists.  Drive harmonics beyond the
    |m - m'| <= 2M window cannot couple any retained sectors; they are
    dropped silently and noted in the matrix label.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    if drive.base_dim != h0.dim:
        raise DimensionError(f"drive base_dim {drive.base_dim} != h0 dim {h0.dim}")
    n = h0.dim
    index_map = SambeIndexMap(base_dim=n, truncations=(truncation,))
    d = index_map.flat_dim
    mat = np.zeros((d, d), dtype=complex)
    eye = np.eye(n, dtype=complex)
    sector_shifts = []
    for m in range(-truncation, truncation + 1):
        sector = m + truncation
        r0 = sector * n
        mat[r0 : r0 + n, r0 : r0 + n] = h0.entries + m * HBAR * omega * eye
        sector_shifts.append((sector, (m,)))
    dropped = _place_blocks(
        mat,
        drive,
        sector_shifts,
        sector_of=lambda harm: harm[0] + truncation,
        n=n,
        truncations=(truncation,),
    )
    label = f"sambe_mono(M={truncation},omega={omega})"
    if dropped:
        label += f" truncated_harmonics={sorted(dropped)}"
    return SambeOperator(
        matrix=Operator(mat, label=label),
        index_map=index_map,
        frequencies=(omega,),
    )


def build_sambe_duo(
    h0: Operator,
    drive: FourierDrive,
    omega1: float,
    omega2: float,
    truncation1: int,
    truncation2: int,
) -> SambeOperator:
    """Lift h0 plus a two-tone drive onto the harmonic plane (m1, m2).

    The diagonal shift is m1 omega1 + m2 omega2 and drive blocks are keyed
    by harmonic pairs.  Flat order: site fastest, then m1, then m2.
    """
    if omega1 <= 0.0 or omega2 <= 0.0:
        raise ValueError("omega1, omega2 must be positive")
    if truncation1 < 0 or truncation2 < 0:
        raise ValueError("truncations must be >= 0")
    if drive.base_dim != h0.dim:
        raise DimensionError(f"drive base_dim {drive.base_dim} != h0 dim {h0.dim}")
    n = h0.dim
    trunc = (truncation1, truncation2)
    index_map = SambeIndexMap(base_dim=n, truncations=trunc)
    d = index_map.flat_dim
    mat = np.zeros((d, d), dtype=complex)
    eye = np.eye(n, dtype=complex)

    def sector_of(harm):
        return (harm[1] + truncation2) * (2 * truncation1 + 1) + (harm[0] + truncation1)

    sector_shifts = []
    for m2 in range(-truncation2, truncation2 + 1):
        for m1 in range(-truncation1, truncation1 + 1):
            sector = sector_of((m1, m2))
            r0 = sector * n
            shift = m1 * HBAR * omega1 + m2 * HBAR * omega2
            mat[r0 : r0 + n, r0 : r0 + n] = h0.entries + shift * eye
            sector_shifts.append((sector, (m1, m2)))
    dropped = _place_blocks(mat, drive, sector_shifts, sector_of, n, trunc)
    label = f"sambe_duo(M1={truncation1},M2={truncation2},omega1={omega1},omega2={omega2})"
    if dropped:
        label += f" truncated_harmonics={sorted(dropped)}"
    return SambeOperator(
        matrix=Operator(mat, label=label),
        index_map=index_map,
        frequencies=(omega1, omega2),
    )


def sambe_weight_profile(vec: np.ndarray, index_map: SambeIndexMap) -> np.ndarray:
    """Marginalize |Psi|^2 over harmonics: w(site) = sum_m |Psi(site, m)|^2."""
    v = np.asarray(vec)
    if v.shape != (index_map.flat_dim,):
        raise DimensionError(f"vector has shape {v.shape}, expected ({index_map.flat_dim},)")
    return (np.abs(v.reshape(index_map.sector_count, index_map.base_dim)) ** 2).sum(axis=0)

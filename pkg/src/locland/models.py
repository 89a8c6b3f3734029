"""Hamiltonian constructors for the benchmark models.

Static lattices are returned as Operator matrices; time-periodic drives are
returned as FourierDrive objects holding one Hermitian block per harmonic,
ready to be lifted into an extended (Sambe-type) operator.  Sites are
indexed 1..N in all center-of-mass conventions, i.e. array row 0 is site 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .linalg import Operator

SSH_VARIANTS = ("topological", "trivial", "domain_wall")

_SIGMA_Z = np.diag([1.0 + 0.0j, -1.0 + 0.0j])


@dataclass(frozen=True, eq=False)
class FourierDrive:
    """Fourier blocks of a time-periodic Hamiltonian term.

    ``blocks`` maps a harmonic key (int for a single drive tone, (int, int)
    pair for two tones) to the operator multiplying exp(i m w t).  All the
    drives built here are cosines, so every block is Hermitian and
    block(-m) = block(m)^dag holds exactly.  ``frequencies`` is optional
    metadata; the Sambe builders take the drive frequencies explicitly.
    """

    blocks: dict
    base_dim: int
    frequencies: tuple = ()

    def __post_init__(self):
        for key, block in self.blocks.items():
            if block.dim != self.base_dim:
                raise DimensionError(
                    f"drive block {key} has dim {block.dim}, expected {self.base_dim}"
                )

    def block(self, key):
        """Operator for one harmonic key, or None if absent."""
        return self.blocks.get(key)


@dataclass(frozen=True)
class SshConfig:
    """Dimerized-chain configuration.

    variant selects the real-space arrangement: a uniformly dimerized chain
    ("topological" needs |t_intra| < |t_inter|, "trivial" the opposite) or a
    "domain_wall" joining a trivial left half to a topological right half.
    """

    variant: str
    n_cells: int
    t_intra: float
    t_inter: float

    def __post_init__(self):
        if self.variant not in SSH_VARIANTS:
            raise ConfigError(f"unknown ssh variant {self.variant!r}, expected one of {SSH_VARIANTS}")
        if self.n_cells < 2:
            raise ConfigError("ssh needs n_cells >= 2")
        if self.t_intra == 0.0 or self.t_inter == 0.0:
            raise ConfigError("ssh hoppings must be nonzero")
        if self.variant == "topological" and abs(self.t_intra) >= abs(self.t_inter):
            raise ConfigError("topological variant needs |t_intra| < |t_inter|")
        if self.variant == "trivial" and abs(self.t_intra) <= abs(self.t_inter):
            raise ConfigError("trivial variant needs |t_intra| > |t_inter|")
        if self.variant == "domain_wall" and abs(self.t_intra) == abs(self.t_inter):
            raise ConfigError("domain_wall needs |t_intra| != |t_inter|")


def hatano_nelson(n_sites: int, t_left: float, t_right: float) -> Operator:
    """Open-boundary chain with non-reciprocal nearest-neighbor hopping.

    t_right sits on the subdiagonal (amplitude for hopping j -> j+1) and
    t_left on the superdiagonal; the asymmetry ratio r = t_right / t_left
    drives the boundary accumulation of all right eigenstates.
    """
    if n_sites < 2:
        raise DimensionError("hatano_nelson needs n_sites >= 2")
    m = np.zeros((n_sites, n_sites), dtype=complex)
    idx = np.arange(n_sites - 1)
    m[idx, idx + 1] = t_left
    m[idx + 1, idx] = t_right
    return Operator(m, label=f"hatano_nelson(N={n_sites},tL={t_left},tR={t_right})")


def aah_static(n_sites: int, hopping: float, lambda0: float, alpha: float, theta: float = 0.0) -> Operator:
    """Quasiperiodic chain: -J hopping plus onsite lambda0 cos(2 pi alpha n + theta).

    The onsite argument uses n = 1..N, matching the site-1-based conventions
    used everywhere else.
    """
    if n_sites < 2:
        raise DimensionError("aah_static needs n_sites >= 2")
    m = np.zeros((n_sites, n_sites), dtype=complex)
    idx = np.arange(n_sites - 1)
    m[idx, idx + 1] = -hopping
    m[idx + 1, idx] = -hopping
    sites = np.arange(1, n_sites + 1)
    m[np.arange(n_sites), np.arange(n_sites)] = lambda0 * np.cos(2.0 * np.pi * alpha * sites + theta)
    return Operator(m, label=f"aah(N={n_sites},J={hopping},lam0={lambda0})")


def aah_drive(n_sites: int, amplitude: float, alpha: float, theta: float = 0.0) -> FourierDrive:
    """Harmonic blocks of the onsite modulation A cos(w t) cos(2 pi alpha n + theta).

    A cosine tone splits evenly over the +1 and -1 harmonics, so both blocks
    equal (A/2) diag(cos(2 pi alpha n + theta)).  Single-site blocks are
    allowed; only the static chain needs room for hopping.
    """
    if n_sites < 1:
        raise DimensionError("aah_drive needs n_sites >= 1")
    sites = np.arange(1, n_sites + 1)
    diag = np.diag(0.5 * amplitude * np.cos(2.0 * np.pi * alpha * sites + theta)).astype(complex)
    block = Operator(diag, label="aah_drive_block")
    return FourierDrive(blocks={1: block, -1: block}, base_dim=n_sites)


def two_level_static(j_coupling: float) -> Operator:
    """Tunneling term -J sigma_x in the (|L>, |R>) basis."""
    if j_coupling <= 0.0:
        raise ValueError("two_level_static needs J > 0")
    m = np.array([[0.0, -j_coupling], [-j_coupling, 0.0]], dtype=complex)
    return Operator(m, label=f"two_level(J={j_coupling})")


def two_level_drive_mono(amplitude: float) -> FourierDrive:
    """Single-tone bias drive s(t) sigma_z / 2 with s(t) = A cos(W t).

    The cosine and the 1/2 in front of sigma_z leave (A/4) sigma_z on the
    +1 and -1 harmonics.
    """
    if amplitude < 0.0:
        raise ValueError("drive amplitude must be >= 0")
    block = Operator(0.25 * amplitude * _SIGMA_Z, label="two_level_mono_block")
    return FourierDrive(blocks={1: block, -1: block}, base_dim=2)


def two_level_drive_duo(a_amplitude: float, b_amplitude: float) -> FourierDrive:
    """Two-tone bias drive with s(t) = A cos(W1 t) + B cos(W2 t).

    Blocks are keyed by harmonic pairs: (A/4) sigma_z on (+-1, 0) and
    (B/4) sigma_z on (0, +-1).
    """
    if a_amplitude < 0.0 or b_amplitude < 0.0:
        raise ValueError("drive amplitudes must be >= 0")
    block_a = Operator(0.25 * a_amplitude * _SIGMA_Z, label="two_level_duo_block_a")
    block_b = Operator(0.25 * b_amplitude * _SIGMA_Z, label="two_level_duo_block_b")
    return FourierDrive(
        blocks={(1, 0): block_a, (-1, 0): block_a, (0, 1): block_b, (0, -1): block_b},
        base_dim=2,
    )


def domain_wall_site(n_cells: int) -> int:
    """1-based site hosting the unpaired midgap mode of the domain-wall chain."""
    return 2 * (n_cells // 2) + 1


def ssh(config: SshConfig) -> Operator:
    """Dimerized open chain in one of three real-space configurations.

    Hoppings follow the negative sign convention (-t on the bonds).  The
    uniform variants alternate t_intra / t_inter over 2*n_cells sites.  The
    domain wall joins a trivial left half to a topological right half with a
    single shared site (2*n_cells - 1 sites total); the two bonds flanking
    the shared site are both weak, so exactly one chiral zero mode sits at
    the wall and both chain ends terminate on strong bonds.
    """
    if config.variant in ("topological", "trivial"):
        n_sites = 2 * config.n_cells
        bonds = np.empty(n_sites - 1)
        bonds[0::2] = config.t_intra
        bonds[1::2] = config.t_inter
    else:
        strong, weak = sorted((config.t_intra, config.t_inter), key=abs, reverse=True)
        n_sites = 2 * config.n_cells - 1
        wall = domain_wall_site(config.n_cells)  # 1-based; = 2w+1 with w = n_cells//2
        bonds = np.full(n_sites - 1, weak)
        b = np.arange(1, n_sites)  # 1-based bond index, bond b joins sites b, b+1
        bonds[(b % 2 == 1) & (b <= wall - 2)] = strong
        bonds[(b % 2 == 0) & (b >= wall + 1)] = strong
    m = np.zeros((n_sites, n_sites), dtype=complex)
    idx = np.arange(n_sites - 1)
    m[idx, idx + 1] = -bonds
    m[idx + 1, idx] = -bonds
    return Operator(m, label=f"ssh({config.variant},n_cells={config.n_cells})")


def bbh(n_x: int, n_y: int, gamma: float, lam: float) -> Operator:
    """Square-lattice quadrupole model with pi flux through every plaquette.

    Each unit cell is a 2x2 block of sites; gamma couples sites inside a
    cell, lam couples neighboring cells, open boundaries.  The gauge flips
    the sign of every x hopping on even rows, which makes the product of
    hopping signs around any plaquette equal to -1.
    """
    if n_x < 2 or n_y < 2:
        raise DimensionError("bbh needs n_x, n_y >= 2")
    lx, ly = 2 * n_x, 2 * n_y
    n_sites = lx * ly
    m = np.zeros((n_sites, n_sites), dtype=complex)

    def flat(i, j):  # (column i, row j), both 1-based
        return (j - 1) * lx + (i - 1)

    for j in range(1, ly + 1):
        for i in range(1, lx + 1):
            p = flat(i, j)
            if i < lx:  # x bond, sign -1 on even rows
                t = gamma if i % 2 == 1 else lam
                sign = 1.0 if j % 2 == 1 else -1.0
                m[p, flat(i + 1, j)] = sign * t
                m[flat(i + 1, j), p] = sign * t
            if j < ly:  # y bond
                t = gamma if j % 2 == 1 else lam
                m[p, flat(i, j + 1)] = t
                m[flat(i, j + 1), p] = t
    return Operator(m, label=f"bbh({n_x}x{n_y},gamma={gamma},lam={lam})")


def bbh_site_coords(flat_index: int, n_x: int) -> tuple[int, int]:
    """Map a flat site index of the bbh lattice to 1-based (column, row)."""
    lx = 2 * n_x
    return flat_index % lx + 1, flat_index // lx + 1

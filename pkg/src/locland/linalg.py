"""Dense complex linear algebra kernel.

Everything downstream works with small dense matrices (d <~ 10^4), so the
kernel stays deliberately simple: Hermitian eigendecompositions and full
SVDs via LAPACK, a pseudoinverse solve with an explicit spectral cutoff,
and the regular Bessel function J0 needed by the driven two-level runs.
All functions are pure; results never share mutable state with the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DimensionError, HermiticityError

#: Default relative spectral cutoff for pseudoinverse solves.  Eigenvalues of
#: H^dag H below DEFAULT_RCOND * lambda_max are treated as numerical zeros.
DEFAULT_RCOND = 1e-12

#: Relative tolerance used when checking that a matrix is Hermitian.
HERMITICITY_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix with a provenance label.

    Entries are coerced to a read-only complex array; non-square or
    non-finite input is rejected at construction time.
    """

    entries: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator must be a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class EigResult:
    """Eigendecomposition; column k of ``vectors`` pairs with ``values[k]``.

    ``label`` carries quality flags such as "defective".
    """

    values: np.ndarray
    vectors: np.ndarray
    label: str = ""


@dataclass(frozen=True, eq=False)
class SvdResult:
    """Full SVD with nonincreasing singular values, H = U diag(s) V^dag."""

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray


@dataclass(frozen=True, eq=False)
class PseudoSolveResult:
    """Solution of a cutoff pseudoinverse solve plus rank bookkeeping."""

    x: np.ndarray
    kept_rank: int
    discarded_rank: int
    degenerate: bool


def hermiticity_defect(matrix: np.ndarray) -> float:
    """max |A - A^dag| relative to the Frobenius norm of A (0 for A = 0)."""
    scale = np.linalg.norm(matrix)
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)) / scale)


def normal_operator(op: Operator) -> Operator:
    """Return H^dag H, symmetrized so it is Hermitian to the last bit."""
    m = op.entries
    out = m.conj().T @ m
    out = 0.5 * (out + out.conj().T)
    return Operator(out, label=f"normal({op.label})" if op.label else "normal")


def eig_hermitian(op: Operator) -> EigResult:
    """Eigendecomposition of a Hermitian operator.

    Values are real and ascending, vectors orthonormal.  Raises
    HermiticityError if the input deviates from Hermiticity by more than
    HERMITICITY_RTOL relative to its Frobenius norm.
    """
    if hermiticity_defect(op.entries) > HERMITICITY_RTOL:
        raise HermiticityError("matrix is not Hermitian within tolerance")
    values, vectors = np.linalg.eigh(op.entries)
    return EigResult(values=values, vectors=vectors, label=op.label)


def eig_general(op: Operator) -> EigResult:
    """Right eigenpairs of a general square matrix.

    Pairs are sorted by (Re, Im) of the eigenvalue and each eigenvector is
    2-norm normalized.  Near-defective inputs are not rejected; they are
    flagged with "defective" in the result label (the residual contract
    ||H psi - E psi|| <= 1e-8 ||H||_F still holds on a best-effort basis).
    """
    values, vectors = np.linalg.eig(op.entries)
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    norms = np.linalg.norm(vectors, axis=0)
    norms[norms == 0.0] = 1.0
    vectors = vectors / norms
    label = op.label
    # a numerically singular eigenvector matrix signals a (near-)defective input
    if op.dim > 0 and np.linalg.svd(vectors, compute_uv=False)[-1] < 1e-8:
        label = (label + " " if label else "") + "defective"
    return EigResult(values=values, vectors=vectors, label=label)


def svd(op: Operator) -> SvdResult:
    """Full singular value decomposition H = U diag(s) V^dag."""
    u, s, vh = np.linalg.svd(op.entries)
    return SvdResult(singular_values=s, left_vectors=u, right_vectors=vh.conj().T)


def smallest_singular_value(op: Operator) -> float:
    """sigma_min(H) = min over unit x of ||H x||_2."""
    return float(np.linalg.svd(op.entries, compute_uv=False)[-1])


def pseudo_solve(op: Operator, b: np.ndarray, rcond: float = DEFAULT_RCOND) -> PseudoSolveResult:
    """Solve A x = b for Hermitian PSD A through its eigendecomposition.

    Only eigenvalues above rcond * lambda_max are inverted; the solution is
    orthogonal to the discarded eigenspace.  If every eigenvalue falls below
    the cutoff the result is the zero vector with ``degenerate`` set.
    """
    if not 0.0 < rcond < 1.0:
        raise ValueError(f"rcond must lie in (0, 1), got {rcond}")
    rhs = np.asarray(b, dtype=complex)
    if rhs.shape != (op.dim,):
        raise DimensionError(f"right-hand side has shape {rhs.shape}, expected ({op.dim},)")
    if hermiticity_defect(op.entries) > HERMITICITY_RTOL:
        raise HermiticityError("pseudo_solve requires a Hermitian matrix")
    w, vecs = np.linalg.eigh(op.entries)
    lam_max = float(w[-1]) if w.size else 0.0
    if lam_max > 0.0 and float(w[0]) < -HERMITICITY_RTOL * lam_max:
        raise ValueError("pseudo_solve requires a positive semidefinite matrix")
    keep = w > rcond * lam_max
    kept = int(np.count_nonzero(keep))
    if kept == 0:
        return PseudoSolveResult(
            x=np.zeros(op.dim, dtype=complex),
            kept_rank=0,
            discarded_rank=op.dim,
            degenerate=True,
        )
    vk = vecs[:, keep]
    x = vk @ ((vk.conj().T @ rhs) / w[keep])
    return PseudoSolveResult(x=x, kept_rank=kept, discarded_rank=op.dim - kept, degenerate=False)


# ---------------------------------------------------------------------------
# Bessel J0
# ---------------------------------------------------------------------------

_J0_SERIES_CUT = 12.0
_J0_RANGE = 50.0


def bessel_j0(x: float) -> float:
    """Regular Bessel function J0 on |x| < 50.

    Power series in (x/2)^2 up to |x| = 12, Hankel asymptotic expansion with
    optimal truncation beyond.  Absolute error stays below 1e-10 across the
    supported range (the experiments only need |x| < 50).
    """
    x = float(x)
    if not math.isfinite(x) or abs(x) >= _J0_RANGE:
        raise ValueError(f"bessel_j0 supports |x| < {_J0_RANGE}, got {x}")
    ax = abs(x)
    if ax <= _J0_SERIES_CUT:
        q = 0.25 * ax * ax
        term = 1.0
        total = 1.0
        for k in range(1, 200):
            term *= -q / (k * k)
            total += term
            if abs(term) < 1e-18:
                break
        return total
    # J0 = sqrt(2/(pi x)) [P cos(x - pi/4) - Q sin(x - pi/4)] with
    # P, Q built from a_k = prod_{j<=k} (2j-1)^2 / (k! 8^k); stop at the
    # smallest term of the (divergent) asymptotic series.
    chi = ax - 0.25 * math.pi
    p_sum, q_sum = 1.0, 0.0
    a_term = 1.0
    prev = math.inf
    for k in range(1, 40):
        a_term *= (2 * k - 1) ** 2 / (8.0 * k)
        term = a_term / ax**k
        if term >= prev:
            break
        prev = term
        r = k % 4
        if r == 1:
            q_sum -= term
        elif r == 2:
            p_sum -= term
        elif r == 3:
            q_sum += term
        else:
            p_sum += term
    return math.sqrt(2.0 / (math.pi * ax)) * (p_sum * math.cos(chi) - q_sum * math.sin(chi))


def weighted_mean_site(weights: np.ndarray) -> float:
    """Weighted average of 1-based site indices: sum_j j w_j / sum_j w_j.

    Shared by the soft landscape indicator and the eigenstate center of mass.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise DimensionError("weights must be a nonempty 1d vector")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")
    total = w.sum()
    if total == 0.0:
        raise DegenerateInputError("all-zero weight vector has no center of mass")
    sites = np.arange(1, w.size + 1, dtype=float)
    return float(sites @ w / total)

"""Dense complex linear-algebra kernels used by the physics modules.

Everything here is domain-free: Kronecker products, a pivoted linear solve
with explicit singularity detection, a scaling-and-squaring matrix
exponential, and Hermitian eigendecomposition.  Matrices are plain
``numpy.ndarray`` of complex128; the validation helpers enforce the finite-
entries contract at the boundary.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import DimensionMismatch, NotHermitian, SingularMatrix

#: Relative pivot size below which a pivoted LU is declared rank deficient.
SINGULARITY_THRESHOLD = 1e-12

#: Elementwise asymmetry tolerance for hermitian_eig input.
HERMITICITY_TOLERANCE = 1e-12


def as_complex_matrix(a, square: bool = False) -> np.ndarray:
    """Coerce ``a`` to a 2-d complex array, enforcing finiteness.

    Raises DimensionMismatch for non-2d (or non-square when ``square``)
    input and ValueError for NaN/Inf entries.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={m.ndim}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def as_complex_vector(b) -> np.ndarray:
    """Coerce ``b`` to a 1-d complex array, enforcing finiteness."""
    v = np.asarray(b, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got ndim={v.ndim}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError("vector entries must be finite")
    return v


def kron(a, b) -> np.ndarray:
    """Kronecker product of two complex matrices."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by pivoted LU.

    Raises SingularMatrix when the smallest pivot falls below
    ``SINGULARITY_THRESHOLD`` relative to the largest matrix entry.
    """
    a = as_complex_matrix(a, square=True)
    b = as_complex_vector(b)
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"rhs length {b.shape[0]} does not match matrix size {a.shape[0]}")
    scale = np.max(np.abs(a))
    if scale == 0.0:
        raise SingularMatrix("zero matrix")
    with warnings.catch_warnings():
        # exact-singular input announces itself via the pivot check below
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) < SINGULARITY_THRESHOLD * scale:
        raise SingularMatrix(
            f"relative pivot {np.min(pivots) / scale:.3e} below "
            f"{SINGULARITY_THRESHOLD:.0e}")
    return lu_solve((lu, piv), b, check_finite=False)


def expm(a) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a Taylor core.

    The input is scaled by 2**s so the scaled infinity norm is at most 0.5,
    the exponential of the scaled matrix is summed to machine precision,
    and the result is squared s times.
    """
    a = as_complex_matrix(a, square=True)
    n = a.shape[0]
    norm = np.linalg.norm(a, np.inf)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
    m = a / (2.0 ** squarings)
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 30):
        term = term @ m / k
        result = result + term
        if np.max(np.abs(term)) <= 1e-20 * max(1.0, np.max(np.abs(result))):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def hermitian_eig(a) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in
    ascending order and orthonormal eigenvector columns.  Raises
    NotHermitian when ``a`` deviates from its conjugate transpose by more
    than ``HERMITICITY_TOLERANCE`` elementwise.
    """
    a = as_complex_matrix(a, square=True)
    asym = np.max(np.abs(a - a.conj().T))
    if asym > HERMITICITY_TOLERANCE:
        raise NotHermitian(f"asymmetry {asym:.3e} exceeds {HERMITICITY_TOLERANCE:.0e}")
    w, v = np.linalg.eigh(a)
    return w, v

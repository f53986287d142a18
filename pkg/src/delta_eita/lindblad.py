"""Liouvillian construction, steady states and time evolution.

The master equation is

    drho/dt = -i [H, rho] + sum_{i<j} gamma_ij D[sigma_ij] rho
              + sum_{i=2,3} gphi_i D[sigma_ii] rho   =:  L rho

with D[c] rho = c rho c^dag - {c^dag c, rho}/2 and sigma_ij = |i><j|
(i < j, a lowering operator: decay |j> -> |i>).

States are vectorized by column stacking: rho[i, j] sits at position
j*3 + i, so vec(A rho B) = (B^T kron A) vec(rho) and

    L = -i (I kron H - H^T kron I) + sum gamma * D-superoperators.
"""

from __future__ import annotations

import numpy as np

from . import numerics
from .atom import Decoherence
from .errors import (
    DegenerateSteadyState,
    DimensionMismatch,
    InvariantViolation,
    NotHermitian,
    SingularMatrix,
)

DIM = 3

#: Residual bound accepted for a steady-state solve, ||L vec(rho)||_inf.
STEADY_STATE_RESIDUAL = 1e-10

#: Hermiticity / trace tolerances for a well-converged density matrix.
DENSITY_HERMITICITY_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-10
DENSITY_EIGENVALUE_FLOOR = -1e-9

#: Looser gates applied to fixed-step integration output.
EVOLVE_TRACE_TOL = 1e-8
EVOLVE_EIGENVALUE_FLOOR = -1e-6


def _unit(i: int, j: int) -> np.ndarray:
    m = np.zeros((DIM, DIM), dtype=complex)
    m[i, j] = 1.0
    return m


SIGMA12 = _unit(0, 1)
SIGMA13 = _unit(0, 2)
SIGMA23 = _unit(1, 2)
SIGMA22 = _unit(1, 1)
SIGMA33 = _unit(2, 2)

_IDENTITY = np.eye(DIM, dtype=complex)
_TRACE_ROW = np.zeros(DIM * DIM)
_TRACE_ROW[[0, 4, 8]] = 1.0


def vectorize(rho) -> np.ndarray:
    """Column-stack a 3x3 matrix into a 9-vector (rho[i, j] -> j*3 + i)."""
    rho = numerics.as_complex_matrix(rho)
    if rho.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected 3x3, got {rho.shape}")
    return rho.reshape(DIM * DIM, order="F")


def devectorize(v) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    v = numerics.as_complex_vector(v)
    if v.shape != (DIM * DIM,):
        raise DimensionMismatch(f"expected length {DIM * DIM}, got {v.shape}")
    return v.reshape((DIM, DIM), order="F")


def dissipator_superop(c) -> np.ndarray:
    """Superoperator of D[c] rho = c rho c^dag - {c^dag c, rho}/2.

    Under column stacking this is
    conj(c) kron c - (I kron c^dag c + (c^dag c)^T kron I) / 2.
    """
    c = numerics.as_complex_matrix(c, square=True)
    if c.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected 3x3 collapse operator, got {c.shape}")
    cdc = c.conj().T @ c
    return (np.kron(c.conj(), c)
            - 0.5 * (np.kron(_IDENTITY, cdc) + np.kron(cdc.T, _IDENTITY)))


# The decay/dephasing channels are fixed operators; precompute their
# superoperators once so sweeps only pay for the Hamiltonian part.
_D12 = dissipator_superop(SIGMA12)
_D13 = dissipator_superop(SIGMA13)
_D23 = dissipator_superop(SIGMA23)
_DPHI2 = dissipator_superop(SIGMA22)
_DPHI3 = dissipator_superop(SIGMA33)


def build_liouvillian(h, dec: Decoherence) -> np.ndarray:
    """Assemble the 9x9 generator for Hamiltonian ``h`` and rates ``dec``.

    Raises NotHermitian if ``h`` is not Hermitian within 1e-10 elementwise.
    The returned matrix annihilates the trace from the left by
    construction (vec(I)^H L = 0).
    """
    h = numerics.as_complex_matrix(h, square=True)
    if h.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected 3x3 Hamiltonian, got {h.shape}")
    asym = np.max(np.abs(h - h.conj().T))
    if asym > DENSITY_HERMITICITY_TOL:
        raise NotHermitian(f"Hamiltonian asymmetry {asym:.3e}")
    lv = -1j * (np.kron(_IDENTITY, h) - np.kron(h.T, _IDENTITY))
    lv += dec.gamma12 * _D12 + dec.gamma13 * _D13 + dec.gamma23 * _D23
    if dec.gphi2 > 0.0:
        lv += dec.gphi2 * _DPHI2
    if dec.gphi3 > 0.0:
        lv += dec.gphi3 * _DPHI3
    return lv


def validate_density_matrix(rho, trace_tol: float = DENSITY_TRACE_TOL,
                            herm_tol: float = DENSITY_HERMITICITY_TOL,
                            eig_floor: float = DENSITY_EIGENVALUE_FLOOR) -> np.ndarray:
    """Check trace, Hermiticity and positivity; return the Hermitized state.

    Raises InvariantViolation when any bound is broken.
    """
    rho = numerics.as_complex_matrix(rho, square=True)
    if rho.shape != (DIM, DIM):
        raise DimensionMismatch(f"expected 3x3 density matrix, got {rho.shape}")
    asym = np.max(np.abs(rho - rho.conj().T))
    if asym > herm_tol:
        raise InvariantViolation(f"Hermiticity violated by {asym:.3e}")
    drift = abs(np.trace(rho) - 1.0)
    if drift > trace_tol:
        raise InvariantViolation(f"trace deviates from 1 by {drift:.3e}")
    sym = 0.5 * (rho + rho.conj().T)
    lowest = np.min(np.linalg.eigvalsh(sym))
    if lowest < eig_floor:
        raise InvariantViolation(f"negative eigenvalue {lowest:.3e}")
    return sym


def steady_state(lv) -> np.ndarray:
    """Unique unit-trace state in the kernel of the Liouvillian.

    One row of L is replaced by the trace constraint and the resulting
    linear system solved; the replaced row (row 0) is always linearly
    dependent on rows 4 and 8 through trace preservation, so no rank is
    lost.  Raises DegenerateSteadyState when the solve is singular or the
    residual against the original L exceeds ``STEADY_STATE_RESIDUAL``.
    """
    lv = numerics.as_complex_matrix(lv, square=True)
    if lv.shape != (DIM * DIM, DIM * DIM):
        raise DimensionMismatch(f"expected 9x9 Liouvillian, got {lv.shape}")
    a = lv.copy()
    a[0, :] = _TRACE_ROW
    b = np.zeros(DIM * DIM, dtype=complex)
    b[0] = 1.0
    try:
        x = numerics.solve_linear(a, b)
    except SingularMatrix as exc:
        raise DegenerateSteadyState(f"singular steady-state solve: {exc}") from exc
    residual = np.max(np.abs(lv @ x))
    if residual > STEADY_STATE_RESIDUAL:
        raise DegenerateSteadyState(
            f"steady-state residual {residual:.3e} exceeds "
            f"{STEADY_STATE_RESIDUAL:.0e} (nullity > 1?)")
    return validate_density_matrix(devectorize(x))


def default_timestep(lv) -> float:
    """Conservative fixed RK4 step, 1e-3 / max(1, ||L||_inf)."""
    return 1e-3 / max(1.0, np.linalg.norm(lv, np.inf))


def evolve(lv, rho0, t: float, dt: float | None = None) -> np.ndarray:
    """Propagate ``rho0`` for time ``t`` with classic fixed-step RK4.

    The final partial step is shortened to land exactly on ``t``.  The
    result is re-Hermitized once per call and validated with the
    integration gates (trace drift <= 1e-8, eigenvalues >= -1e-6);
    violations raise InvariantViolation and usually mean ``dt`` is too
    large for the Liouvillian's spectral radius.
    """
    lv = numerics.as_complex_matrix(lv, square=True)
    if lv.shape != (DIM * DIM, DIM * DIM):
        raise DimensionMismatch(f"expected 9x9 Liouvillian, got {lv.shape}")
    if t < 0.0:
        raise ValueError(f"evolution time must be >= 0, got {t}")
    if dt is None:
        dt = default_timestep(lv)
    if dt <= 0.0:
        raise ValueError(f"time step must be > 0, got {dt}")
    rho0 = validate_density_matrix(rho0)
    v = vectorize(rho0)
    remaining = float(t)
    while remaining > 0.0:
        step = dt if remaining >= dt else remaining
        k1 = lv @ v
        k2 = lv @ (v + (0.5 * step) * k1)
        k3 = lv @ (v + (0.5 * step) * k2)
        k4 = lv @ (v + step * k3)
        v = v + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        remaining -= step
    rho = devectorize(v)
    rho = 0.5 * (rho + rho.conj().T)
    return validate_density_matrix(
        rho, trace_tol=EVOLVE_TRACE_TOL, eig_floor=EVOLVE_EIGENVALUE_FLOOR)


def maximally_mixed() -> np.ndarray:
    """The state I/3."""
    return _IDENTITY / DIM


def ground_state() -> np.ndarray:
    """The pure state |1><1|."""
    rho = np.zeros((DIM, DIM), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def level_projector(level: int) -> np.ndarray:
    """|i><i| for a 1-based level label."""
    if level not in (1, 2, 3):
        raise ValueError(f"level must be 1, 2 or 3, got {level}")
    return _unit(level - 1, level - 1)

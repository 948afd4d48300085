"""Independent eigenvalue oracle: dense diagonalization in a truncated basis.

The Hamiltonian H = ½p² + ½gφ² + λφ^{2k} is assembled exactly (via the
ladder algebra) in the number basis of a harmonic oscillator of chosen
frequency with σ = 0, giving a symmetric banded matrix of bandwidth 2k.
Because the potential is even, the even- and odd-index sectors decouple and
are diagonalized separately.  Dimensions double until the requested levels
stop moving, which both validates the Hartree results and reproduces the
external benchmark values quoted alongside them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import ladder
from .errors import BudgetExceeded, DomainError, NonConvergence
from .hartree import OscillatorModel, hamiltonian_polynomial, solve_level

_START_DIMENSION = 64
_MAX_DIMENSION = 4096


@dataclass(frozen=True)
class TruncatedBasis:
    dimension: int
    basis_frequency: float

    def __post_init__(self):
        if self.dimension < 16:
            raise DomainError(f"basis dimension must be at least 16, got {self.dimension}")
        if not (self.basis_frequency > 0.0) or not math.isfinite(self.basis_frequency):
            raise DomainError(f"basis frequency must be positive, got {self.basis_frequency}")


@dataclass(frozen=True)
class SpectrumEstimate:
    levels: Tuple[float, ...]
    dimension_used: int
    convergence_error: Tuple[float, ...]


def hamiltonian_matrix(model: OscillatorModel, basis: TruncatedBasis) -> np.ndarray:
    """Exact H_{mn} in the σ=0 ladder basis of the given frequency."""
    mode = ladder.ModeParameters(omega=basis.basis_frequency, sigma=0.0)
    poly = hamiltonian_polynomial(model, mode)
    n_dim = basis.dimension
    h = np.zeros((n_dim, n_dim))
    for n in range(n_dim):
        h[n, n] = ladder.matrix_element(poly, n, n)
        for m in range(n + 1, min(n_dim, n + model.power + 1)):
            val = ladder.matrix_element(poly, m, n)
            h[m, n] = val
            h[n, m] = val
    return h


def eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    scale = np.abs(a).max() if a.size else 0.0
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, scale)):
        raise DomainError("matrix is not symmetric")
    try:
        return np.linalg.eigvalsh(a)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigensolver failed: {exc}") from exc


def _sector_levels(h: np.ndarray) -> np.ndarray:
    even = np.linalg.eigvalsh(h[0::2, 0::2])
    odd = np.linalg.eigvalsh(h[1::2, 1::2])
    merged = np.concatenate([even, odd])
    merged.sort()
    return merged


def converged_levels(
    model: OscillatorModel, n_max: int, tol: float
) -> SpectrumEstimate:
    """Levels 0..n_max converged to tol by doubling the basis dimension.

    The basis frequency is adapted to the Hartree ω of level n_max, which
    keeps the required dimension small even at strong coupling.
    """
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    if tol < 1e-10:
        raise DomainError(f"tolerance below 1e-10 is not supported, got {tol}")
    frequency = solve_level(model, n_max).omega
    previous = None
    n_dim = _START_DIMENSION
    while n_dim <= _MAX_DIMENSION:
        basis = TruncatedBasis(dimension=n_dim, basis_frequency=frequency)
        levels = _sector_levels(hamiltonian_matrix(model, basis))[: n_max + 1]
        if previous is not None:
            drift = np.abs(levels - previous)
            if drift.max() < tol:
                return SpectrumEstimate(
                    levels=tuple(float(e) for e in levels),
                    dimension_used=n_dim,
                    convergence_error=tuple(float(d) for d in drift),
                )
        previous = levels
        n_dim *= 2
    raise BudgetExceeded(
        f"levels 0..{n_max} not converged to {tol} within dimension {_MAX_DIMENSION}"
    )

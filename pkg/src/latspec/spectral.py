"""Cyclic Jacobi eigensolver for real symmetric matrices, plus trace-identity checks.

Jacobi rotations are the right tool here: the matrices are small dense
integer matrices, convergence for symmetric input is guaranteed, and the
cyclic-by-row sweep order makes the result deterministic. Eigenvectors are
never needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError
from .graph import DenseSymMatrix, NonPermutabilityGraph

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, ascending."""

    values: tuple[float, ...]

    @property
    def dimension(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        return "\n".join(f"{v:.12g}" for v in self.values)

    def rounded(self) -> tuple[int, ...]:
        return tuple(int(round(v)) for v in self.values)


def _off_norm(a: np.ndarray) -> float:
    return math.sqrt(max(0.0, float((a * a).sum() - (np.diag(a) ** 2).sum())))


def eigenvalues_symmetric(matrix: DenseSymMatrix, tol: float = DEFAULT_TOL) -> Spectrum:
    """Classical cyclic Jacobi iteration until the off-diagonal Frobenius norm
    drops below tol*(1 + ||M||_F), or NumericError after 100 sweeps.

    The returned diagonal approximates the spectrum within the final
    off-diagonal norm.
    """
    if tol <= 0:
        raise InputError("tolerance must be positive")
    a = np.array(matrix.data, dtype=float)
    if a.size and not np.array_equal(a, a.T):
        raise InputError("matrix is not symmetric")
    n = a.shape[0]
    if n <= 1:
        return Spectrum(tuple(float(v) for v in np.diag(a)))

    norm = math.sqrt(float((a * a).sum()))
    stop = tol * (1.0 + norm)
    # scaled by 1/n so a sweep that skips everything already satisfies the
    # stop criterion (off-norm <= n * floor < stop); otherwise tiny entries
    # sitting just under the floor could stall the iteration above it
    rotate_floor = tol * norm / n
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) < stop:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= rotate_floor:
                    continue
                rotated = True
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                app, aqq = a[p, p], a[q, q]
                row_p = c * a[p, :] - s * a[q, :]
                row_q = s * a[p, :] + c * a[q, :]
                a[p, :] = row_p
                a[q, :] = row_q
                a[:, p] = row_p
                a[:, q] = row_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
        if not rotated:
            break
    else:
        raise NumericError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")

    return Spectrum(tuple(sorted(float(v) for v in np.diag(a))))


def spectral_sums(spectrum: Spectrum) -> tuple[float, float]:
    """(sum of values, sum of squared values)."""
    total = math.fsum(spectrum.values)
    squares = math.fsum(v * v for v in spectrum.values)
    return total, squares


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: float
    rhs: float
    tolerance: float
    passed: bool

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": float(f"{self.lhs:.12g}"),
            "rhs": float(f"{self.rhs:.12g}"),
            "residual": float(f"{self.residual:.6g}"),
            "tolerance": float(f"{self.tolerance:.6g}"),
            "passed": self.passed,
        }


def verify_trace_identities(graph: NonPermutabilityGraph, adj_spectrum: Spectrum,
                            lap_spectrum: Spectrum,
                            tol: float | None = None) -> list[IdentityCheck]:
    """Compare the floating spectra against the exact doubled edge count.

    The Laplacian eigenvalue sum and the squared adjacency eigenvalue sum both
    equal 2|E| exactly; the raw adjacency sum is the zero trace.
    """
    two_e = 2 * graph.edge_count
    if tol is None:
        tol = 1e-8 * max(1, two_e)
    lap_sum, _ = spectral_sums(lap_spectrum)
    adj_sum, adj_sq = spectral_sums(adj_spectrum)
    checks = [
        ("laplacian_sum_vs_edges", lap_sum, float(two_e)),
        ("adjacency_sum_vs_zero", adj_sum, 0.0),
        ("adjacency_square_sum_vs_edges", adj_sq, float(two_e)),
    ]
    return [
        IdentityCheck(name, lhs, rhs, tol, abs(lhs - rhs) <= tol)
        for name, lhs, rhs in checks
    ]

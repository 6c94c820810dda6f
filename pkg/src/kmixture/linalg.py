"""Cyclic Jacobi eigenvalue iteration for dense symmetric matrices."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DimensionMismatchError

OFF_TOL = 1e-14
MAX_SWEEPS = 100


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Tournament schedule for even n: n-1 rounds of n/2 disjoint index pairs covering every pair once."""
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        a = players[: n // 2]
        b = players[n // 2:][::-1]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        rounds.append((lo, hi))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def jacobi_eigenvalues(m, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, sorted descending.

    Each sweep visits every off-diagonal pair once. Pairs are grouped into
    rounds of disjoint rotations that are applied together. Iteration stops
    once the off-diagonal Frobenius norm is at most ``tol * ||m||_F``.

    Raises
    ------
    ConvergenceError
        If the threshold is not reached within ``max_sweeps`` sweeps.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return np.empty(0)
    a = 0.5 * (a + a.T)
    if n % 2:
        # a decoupled zero row/column is never rotated (its off-diagonals stay 0)
        a = np.pad(a, ((0, 1), (0, 1)))
    size = a.shape[0]
    threshold = tol * np.linalg.norm(a)
    schedule = _round_robin(size) if size > 1 else ()

    upper = np.triu_indices(size, 1)

    def off_norm():
        return np.sqrt(2.0) * np.linalg.norm(a[upper])

    sweeps = 0
    while off_norm() > threshold:
        if sweeps == max_sweeps:
            raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
        for p, q in schedule:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            # for huge |theta|, t ~ 1/(2 theta); clipping avoids overflow in theta**2
            clipped = np.clip(theta, -1e150, 1e150)
            t = np.sign(clipped) / (np.abs(clipped) + np.sqrt(clipped * clipped + 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # the round's rotations are disjoint, so they form one orthogonal matrix g
            g = np.eye(size)
            g[p, p] = c
            g[q, q] = c
            g[p, q] = s
            g[q, p] = -s
            a = g.T @ a @ g
            a[p, q] = 0.0
            a[q, p] = 0.0
        sweeps += 1

    return np.sort(np.diag(a)[:n])[::-1].copy()

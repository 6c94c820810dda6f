"""Numerical weight optimization on a fixed support.

The K criterion (condition number) is nonsmooth and nonconvex, so only
derivative-free searches are used:

* two weight classes after symmetry reduction: golden-section on the
  per-point weight of the second class;
* otherwise: Nelder-Mead on softmax logits, multistarted from the uniform
  weights plus seeded Dirichlet(1) draws.

The D criterion uses the multiplicative algorithm w_i <- w_i d_i / p, where
d_i = f(x_i)^T M^{-1} f(x_i).

Results are best-found local minima. Supports are processed in a canonical
(descending lexicographic) order and mapped back, so permuting the support
permutes the returned weights and nothing else.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.optimize import minimize

from .basis import ScheffeBasis
from .designs import Design
from .errors import AllStartsSingularError, DimensionMismatchError, DomainError
from .metrics import kappa_from_spectrum, log_det_from_spectrum, spectrum, weighted_information
from .symmetry import is_orbit_closed, orbit_labels

BRACKET_EPS = 1e-9
GOLDEN_MAX_ITER = 200
ZERO_WEIGHT = 1e-12
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_PENALTY = 1e300


class Criterion(str, enum.Enum):
    K = "k"
    D = "d"


@dataclass(frozen=True, eq=False)
class OptimizeSpec:
    criterion: Criterion
    support: np.ndarray
    basis: ScheffeBasis
    tolerance: float = 1e-9
    multistarts: int = 20
    seed: int = 0
    symmetry_reduction: bool = True
    threads: int = 1
    max_iter: int = 20000

    def __post_init__(self):
        object.__setattr__(self, "criterion", Criterion(self.criterion))
        support = Design.uniform(np.asarray(self.support, dtype=float)).points
        if support.shape[1] != self.basis.q:
            raise DimensionMismatchError(f"support has q={support.shape[1]}, basis has q={self.basis.q}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if self.multistarts < 1 or self.threads < 1:
            raise DomainError("multistarts and threads must be >= 1")
        object.__setattr__(self, "support", support)


@dataclass(frozen=True, eq=False)
class OptimizeResult:
    weights: np.ndarray
    objective: float
    iterations: int
    converged: bool
    starts_used: int

    def design(self, support) -> Design:
        return Design(support, self.weights)

    def to_dict(self, support=None) -> dict:
        out = {}
        if support is not None:
            support = np.asarray(support, dtype=float)
            out.update(q=support.shape[1], points=support.tolist())
        out.update(
            weights=self.weights.tolist(),
            objective="inf" if math.isinf(self.objective) else self.objective,
            converged=bool(self.converged),
            iterations=int(self.iterations),
            starts_used=int(self.starts_used),
        )
        return out


def _objective(criterion: Criterion, weights, F: np.ndarray) -> float:
    eig = spectrum(weighted_information(weights, F))
    if criterion is Criterion.K:
        return kappa_from_spectrum(eig)
    return -log_det_from_spectrum(eig)


def objective_value(criterion, weights, support, basis: ScheffeBasis) -> float:
    """kappa(M(w)) for K (inf when singular); -log det M(w) for D."""
    F = basis.evaluate_many(support)
    return _objective(Criterion(criterion), weights, F)


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float,
                   max_iter: int = GOLDEN_MAX_ITER) -> tuple[float, float, int, bool]:
    """Minimize a unimodal f on [lo, hi]. Returns (x, f(x), iterations, converged)."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > tol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        it += 1
    x, fx = (c, fc) if fc <= fd else (d, fd)
    return x, fx, it, b - a <= tol


def _softmax(z: np.ndarray) -> np.ndarray:
    full = np.concatenate([[0.0], z])
    e = np.exp(full - full.max())
    return e / e.sum()


def _nelder_mead_start(fun, theta0: np.ndarray, tol: float, max_iter: int):
    seen_finite = False

    def wrapped(z):
        nonlocal seen_finite
        v = fun(z)
        if math.isfinite(v):
            seen_finite = True
            return v
        return _PENALTY

    k = theta0.size
    simplex = np.vstack([theta0, theta0 + 0.5 * np.eye(k)])
    res = minimize(wrapped, theta0, method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": tol, "fatol": tol,
                            "maxiter": max_iter, "maxfev": 2 * max_iter})
    return res, seen_finite


def _multistart_logits(fun, dim: int, spec: OptimizeSpec):
    """Run Nelder-Mead from each start; returns (best_x, best_f, iterations, converged, starts)."""
    rng = np.random.default_rng(spec.seed)
    starts = [np.zeros(dim)]
    for w in rng.dirichlet(np.ones(dim + 1), size=spec.multistarts - 1):
        w = np.maximum(w, 1e-300)
        starts.append(np.log(w[1:]) - np.log(w[0]))

    def run(theta0):
        return _nelder_mead_start(fun, theta0, spec.tolerance, spec.max_iter)

    if spec.threads > 1:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(s) for s in starts]
    if not any(seen for _, seen in outcomes):
        raise AllStartsSingularError("every probed weight vector gives a singular information matrix")
    # ties go to the earliest start, so threaded and sequential runs agree
    best = min(range(len(outcomes)), key=lambda i: (outcomes[i][0].fun, i))
    res = outcomes[best][0]
    return res.x, float(res.fun), int(res.nit), bool(res.success), len(starts)


def _finish(weights: np.ndarray) -> np.ndarray:
    w = np.where(weights < ZERO_WEIGHT, 0.0, weights)
    return w / w.sum()


def _optimize_k(F: np.ndarray, support: np.ndarray, spec: OptimizeSpec) -> OptimizeResult:
    n = support.shape[0]
    if spec.symmetry_reduction and is_orbit_closed(support):
        labels, _ = orbit_labels(support)
        k = int(labels.max()) + 1
        sizes = np.bincount(labels)
        if k == 1:
            w = np.full(n, 1.0 / n)
            return OptimizeResult(w, _objective(Criterion.K, w, F), 0, True, 1)
        if k == 2:
            def expand_pair(s):
                per = np.array([(1.0 - sizes[1] * s) / sizes[0], s])
                return per[labels]

            hi = 1.0 / sizes[1]
            s, fs, it, ok = golden_section(lambda s: _objective(Criterion.K, expand_pair(s), F),
                                           BRACKET_EPS, hi - BRACKET_EPS, spec.tolerance)
            if math.isinf(fs):
                raise AllStartsSingularError("every probed weight vector gives a singular information matrix")
            w = _finish(expand_pair(s))
            return OptimizeResult(w, _objective(Criterion.K, w, F), it, ok, 1)

        def expand_classes(z):
            mass = _softmax(z)
            return (mass / sizes)[labels]

        z, _, it, ok, used = _multistart_logits(
            lambda z: _objective(Criterion.K, expand_classes(z), F), k - 1, spec)
        w = _finish(expand_classes(z))
        return OptimizeResult(w, _objective(Criterion.K, w, F), it, ok, used)

    if n == 1:
        w = np.ones(1)
        return OptimizeResult(w, _objective(Criterion.K, w, F), 0, True, 1)
    z, _, it, ok, used = _multistart_logits(lambda z: _objective(Criterion.K, _softmax(z), F), n - 1, spec)
    w = _finish(_softmax(z))
    return OptimizeResult(w, _objective(Criterion.K, w, F), it, ok, used)


def _multiplicative(F: np.ndarray, tol: float, max_iter: int, start=None, callback=None) -> OptimizeResult:
    n, p = F.shape
    w = np.full(n, 1.0 / n) if start is None else np.asarray(start, dtype=float) / np.sum(start)
    if not math.isfinite(_objective(Criterion.D, w, F)):
        raise AllStartsSingularError("starting weights give a singular information matrix")
    converged = False
    it = 0
    while it < max_iter:
        m = weighted_information(w, F)
        try:
            factor = cho_factor(m)
        except LinAlgError as err:
            raise AllStartsSingularError(f"information matrix became singular at iteration {it}") from err
        variance = np.einsum("ij,ji->i", F, cho_solve(factor, F.T))
        new = w * variance / p
        new /= new.sum()
        delta = float(np.max(np.abs(new - w)))
        w = new
        it += 1
        if callback is not None:
            callback(it, w, -_objective(Criterion.D, w, F))
        if delta < tol:
            converged = True
            break
    w = _finish(w)
    return OptimizeResult(w, _objective(Criterion.D, w, F), it, converged, 1)


def multiplicative_d_optimal(support, basis: ScheffeBasis, tol: float = 1e-9, max_iter: int = 20000,
                             start=None, callback=None) -> OptimizeResult:
    """D-optimal weights on ``support`` by multiplicative reweighting.

    ``callback(iteration, weights, log_det)`` is called after every update.
    """
    F = basis.evaluate_many(support)
    return _multiplicative(F, tol, max_iter, start, callback)


def optimize_weights(spec: OptimizeSpec) -> OptimizeResult:
    support = spec.support
    order = np.lexsort((-support).T[::-1])
    canonical = support[order]
    F = spec.basis.evaluate_many(canonical)
    if spec.criterion is Criterion.D:
        res = _multiplicative(F, spec.tolerance, spec.max_iter)
    else:
        res = _optimize_k(F, canonical, spec)
    weights = np.empty_like(res.weights)
    weights[order] = res.weights
    return OptimizeResult(weights, res.objective, res.iterations, res.converged, res.starts_used)

"""Information matrices and the scalar criteria computed from them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import ScheffeBasis
from .designs import Design
from .errors import DimensionMismatchError, SingularDesignError
from .linalg import jacobi_eigenvalues

SINGULAR_TOL = 1e-12


def information_matrix(d: Design, basis: ScheffeBasis) -> np.ndarray:
    """M(w) = sum_i w_i f(x_i) f(x_i)^T, symmetrized exactly."""
    if d.q != basis.q:
        raise DimensionMismatchError(f"design has q={d.q}, basis has q={basis.q}")
    return weighted_information(d.weights, basis.evaluate_many(d.points))


def weighted_information(weights, model_matrix) -> np.ndarray:
    F = np.asarray(model_matrix, dtype=float)
    w = np.asarray(weights, dtype=float)
    if w.shape != (F.shape[0],):
        raise DimensionMismatchError(f"{w.size} weights for {F.shape[0]} support points")
    m = (F.T * w) @ F
    return 0.5 * (m + m.T)


def spectrum(m) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, descending."""
    return jacobi_eigenvalues(m)


def _is_singular(eig: np.ndarray) -> bool:
    lmax = eig[0]
    return not lmax > 0 or eig[-1] <= SINGULAR_TOL * lmax


def kappa_from_spectrum(eig: np.ndarray) -> float:
    return math.inf if _is_singular(eig) else float(eig[0] / eig[-1])


def log_det_from_spectrum(eig: np.ndarray) -> float:
    return -math.inf if _is_singular(eig) else float(np.sum(np.log(eig)))


def condition_number(m) -> float:
    """lambda_max / lambda_min, or ``math.inf`` when lambda_min <= 1e-12 * lambda_max."""
    return kappa_from_spectrum(spectrum(m))


def log_det(m) -> float:
    return log_det_from_spectrum(spectrum(m))


def _checked(d: Design, basis: ScheffeBasis, role: str) -> np.ndarray:
    eig = spectrum(information_matrix(d, basis))
    if _is_singular(eig):
        raise SingularDesignError(f"{role} design has a singular information matrix for this model")
    return eig


def d_efficiency(candidate: Design, reference: Design, basis: ScheffeBasis) -> float:
    """(det M(candidate) / det M(reference)) ** (1/p)."""
    ec = _checked(candidate, basis, "candidate")
    er = _checked(reference, basis, "reference")
    return math.exp((log_det_from_spectrum(ec) - log_det_from_spectrum(er)) / basis.p)


def k_efficiency(reference_k: Design, other: Design, basis: ScheffeBasis) -> float:
    """(kappa(reference_k) / kappa(other)) ** (1/p).

    The K-optimal design goes first, so the value is at most one when
    ``reference_k`` really is K-optimal.
    """
    ek = _checked(reference_k, basis, "K-reference")
    eo = _checked(other, basis, "other")
    return (kappa_from_spectrum(ek) / kappa_from_spectrum(eo)) ** (1.0 / basis.p)


@dataclass(frozen=True)
class MetricsReport:
    p: int
    eigenvalues: np.ndarray
    kappa: float
    log_det: float

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[-1])

    def to_dict(self, digits: int = 10) -> dict:
        def num(v):
            if math.isinf(v):
                return "inf" if v > 0 else "-inf"
            return float(f"{v:.{digits}g}")

        return {
            "p": self.p,
            "lambda_max": num(self.lambda_max),
            "lambda_min": num(self.lambda_min),
            "kappa": num(self.kappa),
            "log_det": num(self.log_det),
        }


def evaluate_design(d: Design, basis: ScheffeBasis) -> MetricsReport:
    eig = spectrum(information_matrix(d, basis))
    return MetricsReport(basis.p, eig, kappa_from_spectrum(eig), log_det_from_spectrum(eig))

"""Closed-form K-optimal designs for first- and second-order Scheffe models.

For the second-order model the optimal design sits on the q vertices
(weight r1 each) and the C(q, 2) edge midpoints (weight r2 each). With
that weight pattern the information matrix has a block form whose extreme
eigenvalues are known in closed form. The rest of the spectrum is computed
numerically and is never taken from a formula.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .basis import Order, ScheffeBasis, pair_incidence
from .designs import Design
from .errors import DomainError
from .metrics import d_efficiency, k_efficiency
from .simplex import simplex_lattice, vertices_and_midpoints

R2_TOL = 1e-12


def k_optimal_first_order(q: int) -> Design:
    """Uniform weights 1/q on the simplex vertices; M = I/q, so kappa = 1."""
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q}")
    return Design(np.eye(q), np.full(q, 1.0 / q), (Fraction(1, q),) * q)


def second_order_weights(q: int) -> tuple[Fraction, Fraction]:
    """Per-point vertex and midpoint weights (r1, r2) of the K-optimal second-order design."""
    if q < 2:
        raise DomainError(f"second-order design needs q >= 2, got {q}")
    denom = q * (16 * q - 15)
    return Fraction(8 * q - 7, denom), Fraction(16, denom)


def k_optimal_second_order(q: int) -> Design:
    r1, r2 = second_order_weights(q)
    exact = (r1,) * q + (r2,) * (q * (q - 1) // 2)
    return Design(vertices_and_midpoints(q), [float(v) for v in exact], exact)


def max_r2(q: int) -> float:
    """Largest per-midpoint weight that leaves r1 >= 0."""
    return 2.0 / (q * (q - 1))


@dataclass(frozen=True)
class SymmetricWeights:
    """Per-point weights on vertices (r1) and edge midpoints (r2)."""

    q: int
    r1: float
    r2: float

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"need q >= 2, got {self.q}")
        if self.r1 < 0 or self.r2 < 0:
            raise DomainError("class weights must be nonnegative")
        total = self.q * self.r1 + math.comb(self.q, 2) * self.r2
        if abs(total - 1) > R2_TOL:
            raise DomainError(f"q*r1 + C(q,2)*r2 = {total!r}, not 1")

    @classmethod
    def from_r2(cls, q: int, r2: float) -> "SymmetricWeights":
        _check_r2(q, r2)
        r2 = min(max(float(r2), 0.0), max_r2(q))
        return cls(q, max((1.0 - math.comb(q, 2) * r2) / q, 0.0), r2)

    def design(self) -> Design:
        n2 = math.comb(self.q, 2)
        return Design(vertices_and_midpoints(self.q), [self.r1] * self.q + [self.r2] * n2)


def _check_r2(q: int, r2: float) -> None:
    if q < 2:
        raise DomainError(f"need q >= 2, got {q}")
    hi = max_r2(q)
    if not (-R2_TOL <= r2 <= hi + R2_TOL):
        raise DomainError(f"r2 = {r2!r} outside [0, {hi!r}] for q = {q}")


def symmetric_block_matrix(q: int, r2: float) -> np.ndarray:
    """Information matrix of the symmetric vertex+midpoint design, assembled block-wise."""
    w = SymmetricWeights.from_r2(q, r2)
    m2 = pair_incidence(q)
    n2 = m2.shape[0]
    lin = (w.r1 + (q - 2) / 4 * w.r2) * np.eye(q) + w.r2 / 4 * np.ones((q, q))
    cross = w.r2 / 8 * m2
    return np.block([[lin, cross.T], [cross, w.r2 / 16 * np.eye(n2)]])


def symmetric_extreme_eigenvalues(q: int, r2: float) -> tuple[float, float]:
    """Closed-form (lambda_max, lambda_min) of the symmetric vertex+midpoint information matrix."""
    _check_r2(q, r2)
    root = math.sqrt(max(q * q * (32 * q - 31) / 4 * r2 * r2 - 8 * q * r2 + 64, 0.0))
    mid = q / 2 * r2 + 8
    return (root + mid) / (16 * q), max(mid - root, 0.0) / (16 * q)


def symmetric_condition_number(q: int, r2: float) -> float:
    """Closed-form kappa; ``math.inf`` where the matrix is singular (both endpoints of the r2 range)."""
    lmax, lmin = symmetric_extreme_eigenvalues(q, r2)
    if lmin <= 1e-12 * lmax:
        return math.inf
    return lmax / lmin


@dataclass(frozen=True)
class WeightTableRow:
    q: int
    r1: Fraction
    n1: int
    r2: Fraction
    n2: int

    @property
    def n1r1(self) -> Fraction:
        return self.n1 * self.r1

    @property
    def n2r2(self) -> Fraction:
        return self.n2 * self.r2

    @property
    def total_points(self) -> int:
        return self.n1 + self.n2


TABLE_COLUMNS = ("q", "r1", "n1", "n1r1", "r2", "n2", "n2r2", "total_points")
LIMIT_SHARE = Fraction(1, 2)


def weight_table(q_max: int, q_min: int = 3) -> list[WeightTableRow]:
    """K-optimal second-order weights for q = q_min..q_max.

    As q grows, n1*r1 = (8q-7)/(16q-15) and n2*r2 = 8(q-1)/(16q-15)
    both approach ``LIMIT_SHARE``.
    """
    if q_max < q_min:
        raise DomainError(f"q_max must be >= {q_min}, got {q_max}")
    rows = []
    for q in range(q_min, q_max + 1):
        r1, r2 = second_order_weights(q)
        rows.append(WeightTableRow(q, r1, q, r2, math.comb(q, 2)))
    return rows


def weight_table_csv(rows: list[WeightTableRow], digits: int = 10) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in rows:
        writer.writerow([
            r.q, f"{float(r.r1):.{digits}g}", r.n1, f"{float(r.n1r1):.{digits}g}",
            f"{float(r.r2):.{digits}g}", r.n2, f"{float(r.n2r2):.{digits}g}", r.total_points,
        ])
    return buf.getvalue()


def weight_table_text(rows: list[WeightTableRow], digits: int = 10) -> str:
    header = ["q", "r1", "r1 exact", "n1", "n1*r1", "r2", "r2 exact", "n2", "n2*r2", "n1+n2"]
    body = [
        [str(r.q), f"{float(r.r1):.{digits}g}", str(r.r1), str(r.n1), f"{float(r.n1r1):.{digits}g}",
         f"{float(r.r2):.{digits}g}", str(r.r2), str(r.n2), f"{float(r.n2r2):.{digits}g}", str(r.total_points)]
        for r in rows
    ]
    body.append(["limit", "0", "0", "inf", str(float(LIMIT_SHARE)), "0", "0", "inf", str(float(LIMIT_SHARE)), "inf"])
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(cell.rjust(wd) for cell, wd in zip(row, widths)) for row in [header] + body]
    return "\n".join(lines) + "\n"


def equal_weight_lattice(q: int) -> Design:
    """Uniform design on the {q, 2} lattice: the D-reference for efficiency comparisons."""
    return Design.uniform(simplex_lattice(q, 2))


@dataclass(frozen=True)
class EfficiencyComparison:
    q: int
    p: int
    eff_d_of_k: float
    eff_k_of_d: float

    def to_dict(self, digits: int = 10) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "eff_d_of_k": float(f"{self.eff_d_of_k:.{digits}g}"),
            "eff_k_of_d": float(f"{self.eff_k_of_d:.{digits}g}"),
        }


def compare_k_and_d(q: int) -> EfficiencyComparison:
    """D-efficiency of the K-optimal design and K-efficiency of the equal-weight lattice."""
    basis = ScheffeBasis(q, Order.SECOND)
    k_design = k_optimal_second_order(q)
    d_design = equal_weight_lattice(q)
    return EfficiencyComparison(
        q, basis.p,
        d_efficiency(k_design, d_design, basis),
        k_efficiency(k_design, d_design, basis),
    )

"""Scheffe canonical polynomial regression vectors."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, DomainError


class Order(enum.IntEnum):
    FIRST = 1
    SECOND = 2


@lru_cache(maxsize=None)
def _pairs(q: int) -> tuple[np.ndarray, np.ndarray]:
    i, j = zip(*itertools.combinations(range(q), 2)) if q >= 2 else ((), ())
    return np.array(i, dtype=int), np.array(j, dtype=int)


@dataclass(frozen=True)
class ScheffeBasis:
    """Regression vector f(x) of the first- or second-order Scheffe model.

    First order: f(x) = x.  Second order: x followed by every cross product
    x_i x_j with i < j, pairs in lexicographic order.
    """

    q: int
    order: Order = Order.SECOND

    def __post_init__(self):
        object.__setattr__(self, "order", Order(self.order))
        if self.q < 1:
            raise DomainError(f"basis needs q >= 1, got {self.q}")
        if self.order is Order.SECOND and self.q < 2:
            raise DomainError("second-order Scheffe model needs q >= 2")

    @property
    def p(self) -> int:
        return self.q if self.order is Order.FIRST else self.q * (self.q + 1) // 2

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.q,):
            raise DimensionMismatchError(f"point has shape {x.shape}, basis expects ({self.q},)")
        return self.evaluate_many(x[None, :])[0]

    def evaluate_many(self, points) -> np.ndarray:
        """Model matrix: one regression vector per row, shape (n, p)."""
        X = np.asarray(points, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.q:
            raise DimensionMismatchError(f"points have shape {X.shape}, basis expects (n, {self.q})")
        if self.order is Order.FIRST:
            return X.copy()
        i, j = _pairs(self.q)
        return np.hstack([X, X[:, i] * X[:, j]])

    def to_dict(self) -> dict[str, int]:
        return {"q": self.q, "order": int(self.order)}

    @classmethod
    def from_dict(cls, data) -> "ScheffeBasis":
        return cls(int(data["q"]), Order(int(data["order"])))


def eval_basis(basis: ScheffeBasis, x) -> np.ndarray:
    return basis.evaluate(x)


def pair_incidence(q: int) -> np.ndarray:
    """C(q, 2) x q 0/1 matrix; the row for pair (i, j) has ones in columns i and j."""
    if q < 2:
        raise DomainError(f"pair incidence needs q >= 2, got {q}")
    i, j = _pairs(q)
    out = np.zeros((i.size, q), dtype=int)
    rows = np.arange(i.size)
    out[rows, i] = 1
    out[rows, j] = 1
    return out

"""Mixture points, approximate designs and component bounds, plus their JSON/CSV forms."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import DesignFormatError, DimensionMismatchError, InfeasibleBoundsError, InvalidDesignError

COORD_TOL = 1e-12
WEIGHT_SUM_TOL = 1e-10
DUPLICATE_TOL = 1e-10


def check_point(x, q: int | None = None) -> np.ndarray:
    """Validate a mixture point and return it as a float array.

    Coordinates may dip below zero by at most ``COORD_TOL`` and must sum to
    one within the same tolerance.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise DimensionMismatchError(f"mixture point must be a non-empty vector, got shape {x.shape}")
    if q is not None and x.size != q:
        raise DimensionMismatchError(f"mixture point has {x.size} coordinates, expected {q}")
    if not np.all(np.isfinite(x)):
        raise InvalidDesignError(f"non-finite coordinate in {x.tolist()}")
    if x.min() < -COORD_TOL:
        raise InvalidDesignError(f"negative coordinate in {x.tolist()}")
    if abs(x.sum() - 1.0) > COORD_TOL:
        raise InvalidDesignError(f"coordinates sum to {x.sum()!r}, not 1")
    return x


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Design:
    """Approximate design: support points (n, q) with a probability weight per point.

    ``exact_weights`` holds the same weights as Fractions when they are known
    exactly (closed-form designs); it is dropped by any float-only operation.
    """

    points: np.ndarray
    weights: np.ndarray
    exact_weights: tuple[Fraction, ...] | None = field(default=None)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise DimensionMismatchError(f"points must be a non-empty (n, q) array, got shape {pts.shape}")
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (pts.shape[0],):
            raise DimensionMismatchError(f"{pts.shape[0]} points but {w.size} weights")
        for i, x in enumerate(pts):
            try:
                check_point(x)
            except InvalidDesignError as err:
                raise InvalidDesignError(f"point {i}: {err}") from err
        if not np.all(np.isfinite(w)) or w.min() < 0:
            raise InvalidDesignError("weights must be finite and nonnegative")
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise InvalidDesignError(f"weights sum to {w.sum()!r}, not 1")
        diff = np.abs(pts[:, None, :] - pts[None, :, :]).max(axis=2)
        np.fill_diagonal(diff, np.inf)
        if diff.min() <= DUPLICATE_TOL:
            i, j = np.unravel_index(np.argmin(diff), diff.shape)
            raise InvalidDesignError(f"support points {min(i, j)} and {max(i, j)} coincide")
        if self.exact_weights is not None:
            ex = tuple(Fraction(v) for v in self.exact_weights)
            if len(ex) != w.size or sum(ex) != 1:
                raise InvalidDesignError("exact weights must match the support and sum to 1")
            object.__setattr__(self, "exact_weights", ex)
            w = np.array([float(v) for v in ex])
        object.__setattr__(self, "points", _readonly(pts))
        object.__setattr__(self, "weights", _readonly(w))

    @property
    def q(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @classmethod
    def uniform(cls, points) -> "Design":
        n = len(points)
        return cls(points, np.full(n, 1.0 / n), exact_weights=(Fraction(1, n),) * n)

    def with_weights(self, weights, exact_weights=None) -> "Design":
        return Design(self.points, weights, exact_weights)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "q": self.q,
            "points": self.points.tolist(),
            "weights": self.weights.tolist(),
        }
        if self.exact_weights is not None:
            out["weights_exact"] = [str(v) for v in self.exact_weights]
        return out

    @classmethod
    def from_dict(cls, data: Any) -> "Design":
        if not isinstance(data, dict) or "points" not in data:
            raise DesignFormatError("design JSON must be an object with a 'points' array")
        try:
            pts = np.array(data["points"], dtype=float)
        except (TypeError, ValueError) as err:
            raise DesignFormatError(f"points are not a numeric matrix: {err}") from err
        if pts.ndim != 2:
            raise DesignFormatError("points must be a list of equal-length coordinate lists")
        q = data.get("q", pts.shape[1])
        if not isinstance(q, int) or q != pts.shape[1]:
            raise DimensionMismatchError(f"declared q={q!r} but points have {pts.shape[1]} coordinates")
        exact = None
        if "weights_exact" in data:
            try:
                exact = tuple(Fraction(str(v)) for v in data["weights_exact"])
            except (TypeError, ValueError, ZeroDivisionError) as err:
                raise DesignFormatError(f"bad exact weight: {err}") from err
        if "weights" in data and data["weights"] is not None:
            try:
                w = np.array(data["weights"], dtype=float)
            except (TypeError, ValueError) as err:
                raise DesignFormatError(f"weights are not numeric: {err}") from err
            if exact is not None and (len(exact) != w.size or np.abs(w - [float(v) for v in exact]).max() > WEIGHT_SUM_TOL):
                raise InvalidDesignError("'weights' and 'weights_exact' disagree")
            return cls(pts, w, exact)
        if exact is not None:
            return cls(pts, [float(v) for v in exact], exact)
        return cls.uniform(pts)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "Design":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise DesignFormatError(str(err)) from err
        return cls.from_dict(data)

    def to_csv(self, digits: int = 10) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(self.q)] + ["weight"])
        for x, w in zip(self.points, self.weights):
            writer.writerow([f"{v:.{digits}g}" for v in x] + [f"{w:.{digits}g}"])
        return buf.getvalue()


@dataclass(frozen=True, eq=False)
class ComponentBounds:
    """Per-component lower and upper limits of a constrained mixture region."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        hi = np.asarray(self.upper, dtype=float)
        if lo.ndim != 1 or lo.shape != hi.shape or lo.size == 0:
            raise DimensionMismatchError("lower and upper bounds must be vectors of the same length")
        if np.any(lo < 0) or np.any(lo >= 1):
            raise InfeasibleBoundsError(f"lower bounds must lie in [0, 1): {lo.tolist()}")
        if np.any(hi <= 0) or np.any(hi > 1):
            raise InfeasibleBoundsError(f"upper bounds must lie in (0, 1]: {hi.tolist()}")
        if np.any(lo > hi):
            raise InfeasibleBoundsError("some lower bound exceeds its upper bound")
        object.__setattr__(self, "lower", _readonly(lo))
        object.__setattr__(self, "upper", _readonly(hi))

    @property
    def q(self) -> int:
        return self.lower.size

    @classmethod
    def from_dict(cls, data: Any, q: int | None = None) -> "ComponentBounds":
        """Either side may be omitted; missing lower bounds default to 0, upper to 1."""
        if not isinstance(data, dict) or not ({"lower", "upper"} & data.keys()):
            raise DesignFormatError("bounds JSON must be an object with 'lower' and/or 'upper'")
        try:
            lo = data.get("lower")
            hi = data.get("upper")
            n = len(lo if lo is not None else hi)
            lo = np.zeros(n) if lo is None else np.array(lo, dtype=float)
            hi = np.ones(n) if hi is None else np.array(hi, dtype=float)
        except (TypeError, ValueError) as err:
            raise DesignFormatError(f"bounds are not numeric vectors: {err}") from err
        bounds = cls(lo, hi)
        if q is not None and bounds.q != q:
            raise DimensionMismatchError(f"bounds have {bounds.q} components, design has {q}")
        return bounds

    @classmethod
    def from_json(cls, text: str, q: int | None = None) -> "ComponentBounds":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise DesignFormatError(str(err)) from err
        return cls.from_dict(data, q)

    def to_dict(self) -> dict[str, list[float]]:
        return {"lower": self.lower.tolist(), "upper": self.upper.tolist()}


def same_point(a: Sequence[float], b: Sequence[float], tol: float = DUPLICATE_TOL) -> bool:
    return float(np.max(np.abs(np.asarray(a, float) - np.asarray(b, float)))) <= tol

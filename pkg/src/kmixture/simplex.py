"""Canonical mixture supports and pseudo-component transforms.

Point sets are generated from integer compositions so every coordinate is an
exact ratio before it is converted to float.
"""
from __future__ import annotations

import enum
import itertools
from fractions import Fraction

import numpy as np

from .designs import ComponentBounds, Design, check_point
from .errors import DimensionMismatchError, DomainError, InfeasibleBoundsError, OutOfRegionError

FEASIBILITY_TOL = 1e-10


def _compositions(total: int, parts: int):
    """Integer vectors of length ``parts`` summing to ``total``, descending lexicographic order."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def simplex_lattice_exact(q: int, m: int) -> list[tuple[Fraction, ...]]:
    if q < 1 or m < 1:
        raise DomainError(f"lattice needs q >= 1 and m >= 1, got q={q}, m={m}")
    return [tuple(Fraction(c, m) for c in comp) for comp in _compositions(m, q)]


def simplex_lattice(q: int, m: int) -> np.ndarray:
    """All points of the {q, m} simplex-lattice as a (C(q+m-1, m), q) array.

    Rows are in descending lexicographic order, so the first row is the
    vertex (1, 0, ..., 0).
    """
    if q < 1 or m < 1:
        raise DomainError(f"lattice needs q >= 1 and m >= 1, got q={q}, m={m}")
    return np.array([[c / m for c in comp] for comp in _compositions(m, q)], dtype=float)


def simplex_centroid(q: int) -> np.ndarray:
    """The 2**q - 1 barycentres of the nonempty component subsets.

    Ordered by subset size, then lexicographically by component index.
    """
    if q < 1:
        raise DomainError(f"centroid design needs q >= 1, got {q}")
    rows = []
    for k in range(1, q + 1):
        for subset in itertools.combinations(range(q), k):
            x = np.zeros(q)
            x[list(subset)] = 1.0 / k
            rows.append(x)
    return np.array(rows)


def vertices_and_midpoints(q: int) -> np.ndarray:
    """q vertices followed by the C(q, 2) edge midpoints, pairs in lexicographic order."""
    if q < 2:
        raise DomainError(f"edge midpoints need q >= 2, got {q}")
    rows = list(np.eye(q))
    for i, j in itertools.combinations(range(q), 2):
        x = np.zeros(q)
        x[i] = x[j] = 0.5
        rows.append(x)
    return np.array(rows)


def _clean(x: np.ndarray) -> np.ndarray:
    # tolerated infeasibility can leave -1e-10 residue; snap it back onto the simplex
    x = np.where(x < 0, 0.0, x)
    return x / x.sum()


def _lower_scale(b: ComponentBounds) -> float:
    scale = 1.0 - float(b.lower.sum())
    if scale <= 0:
        raise InfeasibleBoundsError(f"lower bounds sum to {b.lower.sum():.10g}; need a total below 1")
    return scale


def _upper_scale(b: ComponentBounds) -> float:
    scale = float(b.upper.sum()) - 1.0
    if scale <= 0:
        raise InfeasibleBoundsError(f"upper bounds sum to {b.upper.sum():.10g}; need a total above 1")
    return scale


def _as_point(x, b: ComponentBounds) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (b.q,):
        raise DimensionMismatchError(f"point has shape {x.shape}, bounds have {b.q} components")
    return check_point(x)


def to_pseudo_lower(x, b: ComponentBounds) -> np.ndarray:
    scale = _lower_scale(b)
    x = _as_point(x, b)
    if np.any(x < b.lower - FEASIBILITY_TOL):
        raise OutOfRegionError(f"{x.tolist()} violates lower bounds {b.lower.tolist()}")
    return _clean((x - b.lower) / scale)


def from_pseudo_lower(xp, b: ComponentBounds) -> np.ndarray:
    scale = _lower_scale(b)
    xp = _as_point(xp, b)
    return _clean(b.lower + scale * xp)


def to_pseudo_upper(x, b: ComponentBounds) -> np.ndarray:
    scale = _upper_scale(b)
    x = _as_point(x, b)
    if np.any(x > b.upper + FEASIBILITY_TOL):
        raise OutOfRegionError(f"{x.tolist()} violates upper bounds {b.upper.tolist()}")
    return _clean((b.upper - x) / scale)


def from_pseudo_upper(xs, b: ComponentBounds) -> np.ndarray:
    scale = _upper_scale(b)
    xs = _as_point(xs, b)
    x = b.upper - scale * xs
    if np.any(x < -FEASIBILITY_TOL):
        # the inverted simplex pokes outside [0, 1]^q when some U_i < sum(U) - 1
        raise OutOfRegionError(f"pseudo point {xs.tolist()} maps outside the simplex: {x.tolist()}")
    return _clean(x)


class Direction(enum.Enum):
    TO_PSEUDO_LOWER = "to-pseudo-lower"
    FROM_PSEUDO_LOWER = "from-pseudo-lower"
    TO_PSEUDO_UPPER = "to-pseudo-upper"
    FROM_PSEUDO_UPPER = "from-pseudo-upper"


_TRANSFORMS = {
    Direction.TO_PSEUDO_LOWER: to_pseudo_lower,
    Direction.FROM_PSEUDO_LOWER: from_pseudo_lower,
    Direction.TO_PSEUDO_UPPER: to_pseudo_upper,
    Direction.FROM_PSEUDO_UPPER: from_pseudo_upper,
}


def transform_design(d: Design, b: ComponentBounds, direction: Direction | str) -> Design:
    """Apply a pseudo-component map to every support point; weights are kept as-is."""
    direction = Direction(direction)
    if b.q != d.q:
        raise DimensionMismatchError(f"bounds have {b.q} components, design has {d.q}")
    if direction in (Direction.TO_PSEUDO_LOWER, Direction.FROM_PSEUDO_LOWER):
        _lower_scale(b)
    else:
        _upper_scale(b)
    fn = _TRANSFORMS[direction]
    out = []
    for i, x in enumerate(d.points):
        try:
            out.append(fn(x, b))
        except (OutOfRegionError, InfeasibleBoundsError) as err:
            raise type(err)(f"point {i}: {err}") from err
    return Design(np.array(out), d.weights, d.exact_weights)

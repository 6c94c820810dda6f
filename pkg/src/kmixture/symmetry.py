"""Orbits of support points under permutations of the mixture components.

Two points share an orbit exactly when their coordinate vectors, sorted in
descending order, agree within ``ORBIT_TOL`` in max-norm. Sorting is
1-Lipschitz in max-norm, so this gives the same partition as trying every
permutation, at O(q log q) per point.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .designs import Design
from .errors import DomainError

ORBIT_TOL = 1e-10
MAX_ORBIT_SIZE = 1_000_000


def orbit_key(x) -> np.ndarray:
    return np.sort(np.asarray(x, dtype=float))[::-1]


def orbit_labels(points) -> tuple[np.ndarray, np.ndarray]:
    """Label each point with its orbit.

    Returns ``(labels, keys)``. ``keys[k]`` is the sorted coordinate vector of
    orbit ``k``. Orbits are numbered by descending lexicographic key, so the
    numbering does not depend on the order of ``points``.
    """
    pts = np.asarray(points, dtype=float)
    keys: list[np.ndarray] = []
    raw = np.empty(len(pts), dtype=int)
    for i, x in enumerate(pts):
        key = orbit_key(x)
        for k, other in enumerate(keys):
            if np.max(np.abs(other - key)) <= ORBIT_TOL:
                raw[i] = k
                break
        else:
            raw[i] = len(keys)
            keys.append(key)
    key_arr = np.array(keys)
    # descending lexicographic: lexsort sorts ascending on the last key first
    order = np.lexsort((-key_arr).T[::-1])
    rank = np.empty(len(keys), dtype=int)
    rank[order] = np.arange(len(keys))
    return rank[raw], key_arr[order]


def _distinct_values(key: np.ndarray) -> tuple[list[float], list[int]]:
    values: list[float] = []
    counts: list[int] = []
    for v in key:
        if values and abs(values[-1] - v) <= ORBIT_TOL:
            counts[-1] += 1
        else:
            values.append(float(v))
            counts.append(1)
    return values, counts


def orbit_size(key) -> int:
    from math import factorial

    _, counts = _distinct_values(np.asarray(key, dtype=float))
    size = factorial(sum(counts))
    for c in counts:
        size //= factorial(c)
    return size


def orbit_members(key) -> np.ndarray:
    """Every distinct coordinate permutation of ``key``, in descending lexicographic order."""
    key = np.asarray(key, dtype=float)
    size = orbit_size(key)
    if size > MAX_ORBIT_SIZE:
        raise DomainError(f"orbit of {key.tolist()} has {size} members; too large to enumerate")
    values, counts = _distinct_values(key)
    out: list[list[float]] = []
    current: list[float] = []

    def rec():
        if len(current) == key.size:
            out.append(list(current))
            return
        for k, v in enumerate(values):
            if counts[k]:
                counts[k] -= 1
                current.append(v)
                rec()
                current.pop()
                counts[k] += 1

    rec()
    return np.array(out)


def is_orbit_closed(points) -> bool:
    labels, keys = orbit_labels(points)
    return all(np.count_nonzero(labels == k) == orbit_size(key) for k, key in enumerate(keys))


def symmetrize(d: Design) -> Design:
    """Average the weights over each orbit, adding any missing orbit members.

    Points already in the design keep their position and coordinates. Missing
    members are appended orbit by orbit. Exact weights are carried through when
    the input has them.
    """
    labels, keys = orbit_labels(d.points)
    n = d.n
    new_points = [p for p in d.points]
    exact = d.exact_weights
    per_point: list = [None] * n
    appended_weights: list = []
    for k, key in enumerate(keys):
        members = np.flatnonzero(labels == k)
        full = orbit_members(key)
        present = d.points[members]
        missing = [g for g in full if np.min(np.max(np.abs(present - g), axis=1)) > 10 * ORBIT_TOL]
        size = len(members) + len(missing)
        if exact is not None:
            share = sum((exact[i] for i in members), Fraction(0)) / size
        else:
            share = float(np.sum(d.weights[members])) / size
        for i in members:
            per_point[i] = share
        new_points.extend(missing)
        appended_weights.extend([share] * len(missing))
    all_weights = per_point + appended_weights
    if exact is not None:
        return Design(np.array(new_points), [float(v) for v in all_weights], tuple(all_weights))
    w = np.array(all_weights, dtype=float)
    return Design(np.array(new_points), w / w.sum())

"""Input checking shared across the package."""

import numpy as np

UNIT_TOL = 1e-9


def as_vec2(v, name="vector"):
    arr = np.asarray(v, dtype=float)
    if arr.shape != (2,):
        raise ValueError(f"{name} must be a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries: {arr}")
    return arr


def as_unit_vec2(v, name="tangent", tol=UNIT_TOL):
    arr = as_vec2(v, name)
    norm = np.hypot(arr[0], arr[1])
    if abs(norm - 1.0) > tol:
        raise ValueError(f"{name} is not a unit vector (|{name}| = {norm!r})")
    return arr


def as_points(a, name="points", n=None):
    """Return ``a`` as a finite ``(n, 2)`` float array."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"{name} has {arr.shape[0]} rows, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def check_positive(value, name):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value

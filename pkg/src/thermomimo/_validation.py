"""Small input-validation helpers in the spirit of ``sklearn.utils.validation``."""

import math
from numbers import Real

import numpy as np

from .exceptions import DomainError, ValidationError


def check_scalar(value, name, *, min_value=None, strict=False, allow_inf=False,
                 error=ValidationError):
    """Validate a real scalar and return it as ``float``.

    ``strict=True`` makes ``min_value`` an exclusive bound.
    """
    if isinstance(value, bool) or not isinstance(value, (Real, np.floating, np.integer)):
        raise ValidationError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    if math.isnan(value) or (math.isinf(value) and not allow_inf):
        raise error(f"{name} must be finite, got {value!r}")
    if min_value is not None:
        if strict and not value > min_value:
            raise error(f"{name} must be > {min_value}, got {value!r}")
        if not strict and not value >= min_value:
            raise error(f"{name} must be >= {min_value}, got {value!r}")
    return value


def check_positive(value, name, *, allow_inf=False, error=DomainError):
    return check_scalar(value, name, min_value=0.0, strict=True,
                        allow_inf=allow_inf, error=error)


def check_nonnegative(value, name, *, error=ValidationError):
    return check_scalar(value, name, min_value=0.0, error=error)


def check_count(value, name, minimum=1):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def check_nonempty(seq, name):
    seq = list(seq)
    if not seq:
        raise ValidationError(f"{name} must be non-empty")
    return seq


def as_float_vector(values, name, *, min_value=None):
    """Convert to a 1-D float array, rejecting NaN and values below ``min_value``."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{name} must be non-empty")
    if np.isnan(arr).any():
        raise ValidationError(f"{name} contains NaN at index {int(np.argmax(np.isnan(arr)))}")
    if min_value is not None and (arr < min_value).any():
        idx = int(np.argmax(arr < min_value))
        raise ValidationError(f"{name}[{idx}] = {arr[idx]!r} is below {min_value}")
    return arr


def check_strictly_increasing(values, name):
    arr = as_float_vector(values, name)
    if arr.size > 1 and not (np.diff(arr) > 0).all():
        idx = int(np.argmax(np.diff(arr) <= 0)) + 1
        raise ValidationError(f"{name} must be strictly increasing (index {idx})")
    return arr

import numpy as np

from .exceptions import ValidationError


def check_path(X, n_states=None, min_length=1, name="path"):
    """Coerce ``X`` (array-like or Realization) to a 1-d int64 array of state indices."""
    raw = getattr(X, "path", X)
    try:
        arr = np.asarray(raw)
    except (TypeError, ValueError) as exc:
        raise ValidationError("PathInvalid", f"{name} is not array-like: {exc}") from exc
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValidationError("PathInvalid", f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValidationError("PathInvalid", f"{name} must contain integer state indices")
    arr = arr.astype(np.int64)
    if len(arr) < min_length:
        raise ValidationError("PathTooShort", f"{name} needs length >= {min_length}, got {len(arr)}")
    if n_states is not None and arr.size and (arr.min() < 0 or arr.max() >= n_states):
        raise ValidationError("SymbolOutOfRange", f"{name} symbols must lie in 0..{n_states - 1}")
    return arr

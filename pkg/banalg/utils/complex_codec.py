"""Complex-number JSON codec.

Every complex scalar in banalg documents is a ``[re, im]`` pair; vectors are
lists of pairs and tensors nest those lists. This module is the single place
where that convention is encoded and decoded.
"""

from typing import Any

import numpy as np

from ..exceptions import SchemaError


def encode_scalar(value: complex) -> list[float]:
    """Encode a complex scalar as ``[re, im]``.

    Example:
        >>> encode_scalar(2 - 1j)
        [2.0, -1.0]
    """
    z = complex(value)
    return [float(z.real), float(z.imag)]


def decode_scalar(raw: Any) -> complex:
    """Decode ``[re, im]`` (or a bare real number) into a complex scalar.

    Raises:
        SchemaError: If *raw* is neither a number nor a two-element list.
    """
    if isinstance(raw, bool):
        raise SchemaError(f"Expected a number or [re, im] pair, got {raw!r}")
    if isinstance(raw, (int, float)):
        return complex(float(raw), 0.0)
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        re_part, im_part = raw
        if all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in (re_part, im_part)):
            return complex(float(re_part), float(im_part))
    raise SchemaError(f"Expected a number or [re, im] pair, got {raw!r}")


def encode_array(array: np.ndarray) -> Any:
    """Encode a complex array of any rank as nested lists of pairs."""
    arr = np.asarray(array, dtype=complex)
    if arr.ndim == 0:
        return encode_scalar(complex(arr))
    return [encode_array(sub) for sub in arr]


def decode_array(raw: Any, ndim: int) -> np.ndarray:
    """Decode nested lists of ``[re, im]`` pairs into a complex array.

    Args:
        raw: The nested list structure.
        ndim: Expected array rank (1 for vectors, 3 for structure tensors).

    Raises:
        SchemaError: If the nesting depth or shape is inconsistent.
    """
    if ndim == 0:
        return np.asarray(decode_scalar(raw), dtype=complex)
    if not isinstance(raw, (list, tuple)):
        raise SchemaError(f"Expected a list at depth {ndim}, got {type(raw).__name__}")
    if not raw:
        return np.zeros((0,) * ndim, dtype=complex)
    parts = [decode_array(item, ndim - 1) for item in raw]
    shapes = {p.shape for p in parts}
    if len(shapes) != 1:
        raise SchemaError(f"Ragged array: inconsistent shapes {sorted(shapes)}")
    return np.stack(parts).astype(complex)


def clean(value: complex, digits: int = 12) -> complex:
    """Round a complex value for display, mapping ``-0.0`` to ``0.0``."""
    z = complex(value)
    return complex(round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0)

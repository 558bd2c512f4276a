"""Base mixin for serializable dataclass models.

Provides generic ``to_dict`` and ``from_dict`` methods so that
individual model files only need to declare their fields. Complex arrays are
encoded with the ``[re, im]`` pair convention of ``utils.complex_codec``.
"""

import dataclasses
from typing import Any, ClassVar, Dict

import numpy as np

from ..utils.complex_codec import decode_array, encode_array, encode_scalar


def encode_value(value: Any) -> Any:
    """Encode a field value into JSON-compatible data."""
    if isinstance(value, SerializableMixin):
        return value.to_dict()
    if isinstance(value, np.ndarray):
        return encode_array(value)
    if isinstance(value, (complex, np.complexfloating)):
        return encode_scalar(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return {k: encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


class SerializableMixin:
    """Mixin providing generic serialization for ``@dataclass`` models.

    Conventions used by the mixin:

    * Fields whose name starts with ``_`` are **transient** (caches, derived
      data) and are excluded from ``to_dict``.
    * Fields listed in ``_array_fields`` (name -> rank) are complex arrays;
      ``to_dict`` encodes them as nested ``[re, im]`` lists and ``from_dict``
      decodes them back.
    * ``from_dict`` accepts ``kebab-case`` keys as well as ``snake_case``.
    """

    _array_fields: ClassVar[Dict[str, int]] = {}

    # ------------------------------------------------------------------
    # Serialization
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the instance to a JSON-compatible dict.

        Returns:
            A dictionary with snake_case keys; transient fields are excluded.
        """
        data: Dict[str, Any] = {}
        for f in dataclasses.fields(self):  # type: ignore[arg-type]
            if f.name.startswith("_"):
                continue
            data[f.name] = encode_value(getattr(self, f.name))
        return data

    # ------------------------------------------------------------------
    # Factory
    # ------------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Any:
        """Create an instance from a dictionary.

        Unknown keys are ignored; missing keys fall back to field defaults.

        Args:
            data: Input dictionary with field values.

        Returns:
            A new instance of the model.
        """
        normalized = {str(key).replace("-", "_"): value for key, value in data.items()}

        kwargs: Dict[str, Any] = {}
        for f in dataclasses.fields(cls):  # type: ignore[arg-type]
            if not f.init:
                continue
            lookup_key = f.name.lstrip("_") if f.name.startswith("_") else f.name
            if lookup_key in normalized:
                value = normalized[lookup_key]
                if f.name in cls._array_fields and value is not None:
                    value = decode_array(value, cls._array_fields[f.name])
                kwargs[f.name] = value
            elif f.default is not dataclasses.MISSING:
                kwargs[f.name] = f.default
            elif f.default_factory is not dataclasses.MISSING:
                kwargs[f.name] = f.default_factory()  # type: ignore[misc]

        return cls(**kwargs)


def frozen_array(values: Any, dtype: Any = complex) -> np.ndarray:
    """Copy *values* into a read-only numpy array."""
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr

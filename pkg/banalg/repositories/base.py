"""Base repository for JSON/YAML documents backed by serializable models."""

import json
import logging
from pathlib import Path
from typing import Any, Generic, Optional, Type, TypeVar, Union, get_args

import yaml

from ..exceptions import SchemaError
from ..models.base import SerializableMixin

_LOGGER = logging.getLogger(__name__)

_VALID_FORMATS = frozenset({"json", "yaml"})

M = TypeVar("M", bound=SerializableMixin)

PathLike = Union[str, Path]


def _resolve_model_class(cls: type) -> Optional[Type[SerializableMixin]]:
    """Extract the concrete M type argument from ``__orig_bases__``.

    ``class FooRepository(BaseRepository[Foo])`` stores the parameterised
    base in ``__orig_bases__``; the first argument that is a
    :class:`SerializableMixin` subclass wins.
    """
    for base in getattr(cls, "__orig_bases__", ()):
        args = get_args(base)
        if args:
            candidate = args[0]
            if isinstance(candidate, type) and issubclass(candidate, SerializableMixin):
                return candidate
    return None


class BaseRepository(Generic[M]):
    """Reads and writes one model type as UTF-8 JSON or YAML documents.

    Subclasses set ``file_format`` (``"json"`` or ``"yaml"``). ``model_class``
    is inferred from the generic parameter
    (``class FooRepo(BaseRepository[Foo])`` → ``Foo``) unless declared.

    Optional hooks (override in subclasses):
        - _decode_doc(doc):   post-process a parsed document.
        - _encode_doc(data):  pre-process a dict before dumping.
        - _doc_to_model(doc): convert a decoded document to a model.
                              Default calls ``model_class.from_dict(doc)``.
    """

    file_format: str = "json"
    model_class: Optional[Type[M]] = None  # type: ignore[assignment]

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)
        if "model_class" not in cls.__dict__:
            resolved = _resolve_model_class(cls)
            if resolved is not None:
                cls.model_class = resolved  # type: ignore[assignment]
        if cls.file_format not in _VALID_FORMATS:
            raise ValueError(f"Invalid file format '{cls.file_format}'. Must be one of {sorted(_VALID_FORMATS)}")

    # ------------------------------------------------------------------
    # Document transformation hooks
    # ------------------------------------------------------------------

    def _decode_doc(self, doc: Any) -> Any:
        return doc

    def _encode_doc(self, data: dict[str, Any]) -> dict[str, Any]:
        return data

    def _doc_to_model(self, doc: Any) -> M:
        """Convert a decoded document to a typed model instance.

        Raises:
            SchemaError: If the document is not an object or misses fields.
            NotImplementedError: If ``model_class`` is not set.
        """
        if self.model_class is None:
            raise NotImplementedError(f"{type(self).__name__} must define 'model_class'")
        if not isinstance(doc, dict):
            raise SchemaError(f"Expected a JSON object for {self.model_class.__name__}, got {type(doc).__name__}")
        try:
            return self.model_class.from_dict(doc)  # type: ignore[return-value]
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"Invalid {self.model_class.__name__} document: {exc}") from exc

    # ------------------------------------------------------------------
    # Parsing
    # ------------------------------------------------------------------

    def parse(self, text: str) -> Any:
        """Parse *text* in the repository's format.

        Raises:
            SchemaError: On malformed JSON or YAML.
        """
        try:
            if self.file_format == "yaml":
                return yaml.safe_load(text)
            return json.loads(text)
        except (json.JSONDecodeError, yaml.YAMLError) as exc:
            raise SchemaError(f"Malformed {self.file_format.upper()} input: {exc}") from exc

    def loads(self, text: str) -> M:
        return self._doc_to_model(self._decode_doc(self.parse(text)))

    def load(self, path: PathLike) -> M:
        """Read one model from *path*.

        Raises:
            SchemaError: If the file cannot be read or parsed.
        """
        return self.loads(self.read_text(path))

    @staticmethod
    def read_text(path: PathLike) -> str:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise SchemaError(f"Cannot read {path}: {exc}") from exc
        _LOGGER.debug("Read %d bytes from %s", len(text), path)
        return text

    # ------------------------------------------------------------------
    # Writing
    # ------------------------------------------------------------------

    def dumps(self, model: M) -> str:
        data = self._encode_doc(model.to_dict())
        if self.file_format == "yaml":
            return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)
        return json.dumps(data, ensure_ascii=False)

    def save(self, model: M, path: PathLike) -> Path:
        """Write *model* to *path* and return the path."""
        target = Path(path)
        target.write_text(self.dumps(model) + "\n", encoding="utf-8")
        _LOGGER.debug("Saved %s to %s", type(model).__name__, target)
        return target

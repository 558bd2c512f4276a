"""Repository for algebra documents: the raw table schema or constructor JSON."""

import logging
import sys
from typing import Any, Optional, TextIO

from ..const import DEFAULT_SEED, DEFAULT_TOL
from ..exceptions import SchemaError
from ..models.algebra import Algebra
from ..services.algebra_factory import AlgebraFactory
from .base import BaseRepository, PathLike

_LOGGER = logging.getLogger(__name__)


class AlgebraRepository(BaseRepository[Algebra]):
    """Loads algebras from ``{"dim", "labels", "table"}`` documents or
    constructor specs such as ``{"kind": "upper_triangular", "n": 3}``.
    """

    file_format = "json"

    def __init__(self, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> None:
        self.factory = AlgebraFactory(seed, tol)

    def _doc_to_model(self, doc: Any) -> Algebra:
        if not isinstance(doc, dict):
            raise SchemaError(f"Algebra input must be a JSON object, got {type(doc).__name__}")
        if "kind" in doc and str(doc["kind"]).lower() != "raw":
            return self.factory.create(doc)
        if "table" not in doc:
            raise SchemaError("Algebra document needs a 'table' (or a constructor 'kind')")
        doc = dict(doc)
        doc.setdefault("dim", len(doc["table"]) if isinstance(doc["table"], list) else 0)
        return super()._doc_to_model(doc)

    def read(
        self,
        path: Optional[PathLike] = None,
        inline: Optional[str] = None,
        stream: Optional[TextIO] = None,
    ) -> Algebra:
        """Load from a file, an inline JSON string, or a stream (stdin by default).

        Raises:
            SchemaError: On unreadable or malformed input.
        """
        if path is not None:
            _LOGGER.info("Loading algebra from %s", path)
            return self.load(path)
        if inline is not None:
            return self.loads(inline)
        source = stream if stream is not None else sys.stdin
        text = source.read()
        if not text.strip():
            raise SchemaError("No algebra given: use --input, --algebra or pipe JSON on stdin")
        return self.loads(text)


def load_algebra(source: Any, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> Algebra:
    """Load an algebra from a path, an inline JSON string, or an already parsed dict.

    A string is taken as inline JSON when it starts with ``{``.

    Raises:
        SchemaError: On schema violations.
        NonAssociativeTable: If the table is not associative.
    """
    repo = AlgebraRepository(seed, tol)
    if isinstance(source, dict):
        return repo._doc_to_model(source)
    if isinstance(source, str) and source.lstrip().startswith("{"):
        return repo.loads(source)
    return repo.load(source)

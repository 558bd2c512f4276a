"""Repository for the versioned fixture corpus."""

import logging
from pathlib import Path
from typing import Any, Optional

from ..const import CORPUS_FILENAME
from ..exceptions import SchemaError
from ..models.harness import Fixture
from .base import BaseRepository, PathLike

_LOGGER = logging.getLogger(__name__)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


class FixtureRepository(BaseRepository[Fixture]):
    """Reads the YAML corpus: a top-level ``fixtures:`` list of fixture documents."""

    file_format = "yaml"

    def _decode_doc(self, doc: Any) -> Any:
        if isinstance(doc, dict) and "spec" in doc and not isinstance(doc["spec"], dict):
            raise SchemaError(f"Fixture {doc.get('name')!r} has a non-object spec")
        return doc

    def load_corpus(self, path: Optional[PathLike] = None) -> list[Fixture]:
        """All fixtures of the corpus at *path* (default: the packaged corpus).

        Raises:
            SchemaError: On malformed YAML, missing fields or duplicate names.
        """
        source = Path(path) if path is not None else DATA_DIR / CORPUS_FILENAME
        document = self.parse(self.read_text(source))
        if document is None:
            return []
        if not isinstance(document, dict) or not isinstance(document.get("fixtures", []), list):
            raise SchemaError(f"{source}: expected a mapping with a 'fixtures' list")

        fixtures = [self._doc_to_model(self._decode_doc(doc)) for doc in document.get("fixtures") or []]
        names = [f.name for f in fixtures]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise SchemaError(f"Duplicate fixture names: {', '.join(duplicates)}")
        _LOGGER.info("Loaded %d fixture(s) from %s", len(fixtures), source)
        return fixtures


def load_corpus(path: Optional[PathLike] = None) -> list[Fixture]:
    return FixtureRepository().load_corpus(path)

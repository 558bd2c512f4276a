"""File-driven commands on ideals: combining identities and extending characters.

Both commands read a JSON document given with ``--data`` (inline or
``@path``):

* ``combine``: ``{"ideal": [v1, ...] | "kernel_of": sel, "e": v, "f": v}``
* ``extend-char``: ``{"ideal": [v1, ...] | "kernel_of": sel,
  "phi_ideal": sel, "u": v}``; ``u`` defaults to the two-sided identity of
  the ideal, ``phi_ideal`` is resolved against the ideal viewed as an
  algebra.

Vectors are coefficient lists in the algebra's basis, entries either
numbers or ``[re, im]`` pairs.
"""

import argparse
import logging
from typing import Any

import numpy as np

from ..const import SIDE_TWO_SIDED
from ..exceptions import IdealHasNoIdentity, SchemaError
from ..models.character import Character
from ..models.subspace import SubspaceBasis
from ..services.algebra_factory import span, subalgebra
from ..services.amenability_service import combine_identities, extend_character_from_ideal, kernel_basis
from ..services.character_solver import resolve_character
from ..services.identity_service import find_identity_on
from ..utils.complex_codec import decode_array
from .base import BaseCommand, format_complex, parse_json_option

_LOGGER = logging.getLogger(__name__)


class IdealCommand(BaseCommand):
    """Shared ``--data`` parsing."""

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--data", required=True, help="input document as JSON (or @file)")

    @classmethod
    def options_from(cls, args: argparse.Namespace) -> dict[str, Any]:
        return {"data": args.data}

    def document(self) -> dict[str, Any]:
        doc = parse_json_option(self.config.options.get("data"), "--data")
        if not isinstance(doc, dict):
            raise SchemaError("--data must be a JSON object")
        return doc

    def vector(self, doc: dict[str, Any], key: str) -> np.ndarray:
        if key not in doc:
            raise SchemaError(f"--data is missing {key!r}")
        return decode_array(doc[key], 1)

    def ideal(self, doc: dict[str, Any]) -> SubspaceBasis:
        if "kernel_of" in doc:
            phi = resolve_character(self.algebra, doc["kernel_of"], self.config.tol, self.config.seed)
            return kernel_basis(self.algebra, phi, self.config.tol)  # type: ignore[arg-type]
        if "ideal" not in doc or not isinstance(doc["ideal"], list):
            raise SchemaError("--data needs 'ideal' (a list of vectors) or 'kernel_of' (a character selector)")
        vectors = [decode_array(v, 1) for v in doc["ideal"]]
        return span(self.algebra, vectors, require_ideal=True)


class CombineCommand(IdealCommand):
    name = "combine"
    help = "combine a Δ-weak identity of an ideal with a left identity modulo it"

    def execute(self) -> dict[str, Any]:
        doc = self.document()
        ideal = self.ideal(doc)
        g = combine_identities(
            self.algebra,
            ideal,
            self.vector(doc, "e"),
            self.vector(doc, "f"),
            self.config.tol,
            self.config.seed,
        )
        return {"g": g.coeffs, "l1": g.l1_norm, "ideal_dim": ideal.dim}

    def render_text(self, payload: Any) -> str:
        g: np.ndarray = payload["g"]
        return "g = [" + ", ".join(format_complex(v) for v in g) + f"]  (ideal of dimension {payload['ideal_dim']})"


class ExtendCharacterCommand(IdealCommand):
    name = "extend-char"
    help = "extend a character of a unital ideal to the algebra"

    def execute(self) -> Character:
        doc = self.document()
        ideal = self.ideal(doc)
        if "u" in doc:
            u = self.vector(doc, "u")
        else:
            unit = find_identity_on(self.algebra, ideal, SIDE_TWO_SIDED, self.config.tol)
            if unit is None:
                raise IdealHasNoIdentity("The ideal has no two-sided identity; pass 'u' explicitly")
            u = unit.coeffs
        if "phi_ideal" not in doc:
            raise SchemaError("--data is missing 'phi_ideal'")
        ideal_algebra = subalgebra(self.algebra, ideal)
        phi_ideal = resolve_character(ideal_algebra, doc["phi_ideal"], self.config.tol, self.config.seed)
        _LOGGER.debug("extend-char: ideal of dimension %d, phi_I = %s", ideal.dim, phi_ideal.label)
        return extend_character_from_ideal(self.algebra, ideal, phi_ideal, u, self.config.tol)

    def render_text(self, payload: Any) -> str:
        character: Character = payload
        values = ", ".join(format_complex(v) for v in character.covector)
        return f"{character.label}: [{values}]  residual {character.residual:.2e}"

"""Command printing the character space Δ(A)."""

from typing import Any

from ..models.character import CharacterSet
from ..services.character_solver import character_space
from .base import BaseCommand, format_complex


class CharactersCommand(BaseCommand):
    name = "characters"
    help = "print the characters of the algebra"

    def execute(self) -> CharacterSet:
        return character_space(self.algebra, self.config.tol, self.config.seed)

    def render_text(self, payload: Any) -> str:
        if len(payload) == 0:
            return "no characters"
        lines = []
        for character in payload:
            values = ", ".join(format_complex(v) for v in character.covector)
            lines.append(f"{character.label}: [{values}]  residual {character.residual:.2e}")
        return "\n".join(lines)

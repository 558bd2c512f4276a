"""Command emitting the JSON of a constructed algebra."""

import argparse
from typing import Any

from ..exceptions import SchemaError
from ..models.algebra import Algebra
from ..services.algebra_factory import AlgebraFactory
from .base import BaseCommand, format_complex, parse_json_option

_SIMPLE_INT_PARAMS = ("n", "dim", "cyclic", "symmetric")


class ConstructCommand(BaseCommand):
    """``construct KIND [--n N] [--dim D] [--functional JSON] [--params JSON]``.

    ``--params`` holds the full constructor parameters (nested operands for
    ``lau``, ``direct_sum``, ``unitization`` and ``quotient``); the short
    flags override matching keys.
    """

    name = "construct"
    help = "build an algebra from a constructor and print its JSON"
    needs_algebra = False

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("kind", help="upper_triangular, a_phi, lau, group, direct_sum, unitization, quotient, zero, raw")
        parser.add_argument("--n", type=int, help="size n of T_n")
        parser.add_argument("--dim", type=int, help="dimension for a_phi and zero")
        parser.add_argument("--cyclic", type=int, help="order m of the cyclic group")
        parser.add_argument("--symmetric", type=int, help="degree n of the symmetric group")
        parser.add_argument("--functional", help="covector JSON for a_phi, e.g. [[1,0],[0,0]]")
        parser.add_argument("--params", help="constructor parameters as JSON (or @file)")

    @classmethod
    def options_from(cls, args: argparse.Namespace) -> dict[str, Any]:
        options: dict[str, Any] = {"kind": args.kind, "params": args.params, "functional": args.functional}
        for key in _SIMPLE_INT_PARAMS:
            options[key] = getattr(args, key, None)
        return options

    def spec(self) -> dict[str, Any]:
        options = self.config.options
        params = parse_json_option(options.get("params"), "--params") or {}
        if not isinstance(params, dict):
            raise SchemaError("--params must be a JSON object")
        spec = dict(params)
        spec["kind"] = options["kind"]
        for key in _SIMPLE_INT_PARAMS:
            if options.get(key) is not None:
                spec[key] = options[key]
        functional = parse_json_option(options.get("functional"), "--functional")
        if functional is not None:
            spec["phi"] = functional
        return spec

    def execute(self) -> Algebra:
        return AlgebraFactory(self.config.seed, self.config.tol).create(self.spec())

    def render_text(self, payload: Any) -> str:
        algebra: Algebra = payload
        lines = [f"{algebra.provenance} algebra of dimension {algebra.dim}", "basis: " + " ".join(algebra.labels)]
        for i, left in enumerate(algebra.labels):
            for j, right in enumerate(algebra.labels):
                terms = [
                    f"{format_complex(algebra.table[i, j, k])}·{algebra.labels[k]}"
                    for k in range(algebra.dim)
                    if abs(algebra.table[i, j, k]) > 0
                ]
                if terms:
                    lines.append(f"{left}·{right} = " + " + ".join(terms))
        return "\n".join(lines)

"""Command running the theorem harness over the fixture corpus."""

import argparse
from typing import Any

from ..const import EXIT_CHECKS_FAILED, EXIT_OK
from ..exceptions import ConfigError
from ..models.harness import HarnessSummary
from ..repositories.fixture_repository import load_corpus
from ..services.theorem_harness import run_all
from .base import BaseCommand


class VerifyCommand(BaseCommand):
    name = "verify"
    help = "run the theorem harness over the fixture corpus"
    needs_algebra = False

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--family", help="only fixtures whose family or name starts with this prefix")
        parser.add_argument("--workers", type=int, default=1, help="threads evaluating fixtures (default 1)")
        parser.add_argument("--corpus", help="corpus YAML file (default: the bundled corpus)")
        parser.add_argument("--details", action="store_true", help="include every check result in the output")

    @classmethod
    def options_from(cls, args: argparse.Namespace) -> dict[str, Any]:
        return {"family": args.family, "workers": args.workers, "corpus": args.corpus, "details": args.details}

    def execute(self) -> dict[str, Any]:
        options = self.config.options
        workers = int(options.get("workers") or 1)
        if workers < 1:
            raise ConfigError(f"--workers must be at least 1, got {workers}")
        corpus = load_corpus(options.get("corpus"))
        summary = run_all(corpus, self.config.seed, self.config.tol, workers, options.get("family"))
        payload: dict[str, Any] = summary.to_dict()
        if options.get("details"):
            payload["results"] = [r.to_dict() for r in summary.results]
        self._summary = summary
        return payload

    def exit_code(self, payload: Any) -> int:
        return EXIT_OK if not payload["failures"] else EXIT_CHECKS_FAILED

    def render_text(self, payload: Any) -> str:
        summary: HarnessSummary = self._summary
        lines = [f"{'✓' if r.passed else '✗'} {r.name}" + (f"  ({r.detail})" if r.detail and not r.passed else "") for r in summary.results]
        lines.append("=" * 70)
        lines.append(f"{summary.fixtures} fixture(s), {summary.checks} check(s), {len(summary.failures)} failure(s)")
        return "\n".join(lines)

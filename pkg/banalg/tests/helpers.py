"""Shared test utilities for the banalg test suite.

Provides ``assert_raises`` (a stdlib-only stand-in for ``pytest.raises``),
numeric comparison helpers, cached algebra builders and a CLI runner, so
individual test files do not duplicate bootstrapping code.
"""

import io
import json
import re
from contextlib import contextmanager
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np

from banalg.cli import main
from banalg.models.algebra import Algebra
from banalg.models.character import CharacterSet
from banalg.services.algebra_factory import a_phi_algebra, direct_sum, lau_product, upper_triangular
from banalg.services.character_solver import character_space

# Base directory: banalg/ (parent of tests/)
BASE_DIR = Path(__file__).resolve().parent.parent
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"
DATA_DIR = BASE_DIR / "data"


@contextmanager
def assert_raises(expected_exc, match: str = ""):
    """Stdlib-only replacement for pytest.raises with optional message match.

    Args:
        expected_exc: Exception class expected to be raised.
        match:        Optional regex pattern that must appear in str(exc).
    """
    try:
        yield
    except expected_exc as exc:  # type: ignore[misc]
        if match and not re.search(match, str(exc)):
            raise AssertionError(
                f"{expected_exc.__name__} raised but message {str(exc)!r} did not match pattern {match!r}"
            ) from exc
        return
    except Exception as exc:
        raise AssertionError(f"Expected {expected_exc.__name__}, got {type(exc).__name__}: {exc}") from exc
    raise AssertionError(f"{expected_exc.__name__} was not raised")


def assert_close(actual: Any, expected: Any, tol: float = 1e-8, msg: str = "") -> None:
    """ℓ∞ comparison of complex arrays or scalars."""
    a = np.asarray(actual, dtype=complex)
    b = np.asarray(expected, dtype=complex)
    assert a.shape == b.shape, f"{msg} shape {a.shape} != {b.shape}"
    distance = float(np.max(np.abs(a - b))) if a.size else 0.0
    assert distance <= tol, f"{msg} distance {distance:.3e} > {tol:.1e}: {a} vs {b}"


def unit_vector(dim: int, index: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def diagonal_index(n: int, k: int) -> int:
    """Basis index of the matrix unit E_kk (1-based k) in T_n."""
    return sum(n - i for i in range(k - 1))


# ---------------------------------------------------------------------------
# Cached algebras
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def t(n: int) -> Algebra:
    return upper_triangular(n)


@lru_cache(maxsize=None)
def t_chars(n: int) -> CharacterSet:
    return character_space(t(n))


@lru_cache(maxsize=None)
def a_phi(dim: int) -> Algebra:
    return a_phi_algebra(dim, unit_vector(dim, 0))


@lru_cache(maxsize=None)
def lau_a_phi() -> Algebra:
    """Lau(A_φ(ℂ²), A_φ(ℂ²), φ): two characters."""
    return lau_product(a_phi(2), a_phi(2), unit_vector(2, 0))


@lru_cache(maxsize=None)
def t2_plus_c() -> Algebra:
    return direct_sum(t(2), t(1))


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def run_cli(argv: Sequence[str], stdin: Optional[str] = None) -> tuple[int, str]:
    """Run ``banalg`` in-process; returns ``(exit_code, stdout)``."""
    out = io.StringIO()
    code = main(list(argv), stdout=out, stdin=io.StringIO(stdin or ""))
    return code, out.getvalue()


def run_cli_json(argv: Sequence[str], stdin: Optional[str] = None) -> tuple[int, Any]:
    code, text = run_cli(argv, stdin)
    return code, (json.loads(text) if text.strip() else None)

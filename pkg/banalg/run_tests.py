#!/usr/bin/env python3
"""Run the test suites without pytest.

Each test module exposes ``SUITE_LABEL`` and ``TEST_SUITE``, a list of
``(name, function)`` pairs. Arguments select modules by substring.

Usage:
    python3 banalg/run_tests.py               # every suite
    python3 banalg/run_tests.py harness cli   # matching suites only
"""
import importlib
import sys
import time
from pathlib import Path
from types import ModuleType
from typing import Sequence

# Repository root on sys.path so suites import as banalg.tests.*
_repo_root = Path(__file__).resolve().parent.parent
if str(_repo_root) not in sys.path:
    sys.path.insert(0, str(_repo_root))


_TEST_MODULES = [
    "test_algebra_core",
    "test_characters",
    "test_amenability",
    "test_harness",
    "test_cli_repository",
    "test_properties",
]


def _selected(patterns: Sequence[str]) -> list[str]:
    if not patterns:
        return list(_TEST_MODULES)
    return [name for name in _TEST_MODULES if any(p in name for p in patterns)]


def _run_suite(mod: ModuleType) -> tuple[int, int]:
    """Run one module's suite; returns (tests, failures)."""
    suite: list = getattr(mod, "TEST_SUITE", [])
    failures = 0
    started = time.perf_counter()
    print(f"\n{getattr(mod, 'SUITE_LABEL', mod.__name__)}")
    for test_name, test_func in suite:
        try:
            test_func()
            print(f"  ✓ {test_name}")
        except AssertionError as e:
            failures += 1
            print(f"  ✗ {test_name}")
            print(f"    {e}")
        except Exception as e:
            failures += 1
            print(f"  ✗ {test_name} (ERROR)")
            print(f"    {type(e).__name__}: {e}")
    print(f"  -- {len(suite) - failures}/{len(suite)} in {time.perf_counter() - started:.1f}s")
    return len(suite), failures


def run(patterns: Sequence[str] = ()) -> int:
    """Run the selected suites and return the process exit code."""
    modules = _selected(patterns)
    if not modules:
        print(f"No test module matches {' '.join(patterns)!r}")
        return 2

    print("=" * 70)
    print(" banalg - Test Suite")
    print("=" * 70)

    total_tests = failures = 0
    for module_name in modules:
        tests, failed = _run_suite(importlib.import_module(f"banalg.tests.{module_name}"))
        total_tests += tests
        failures += failed

    print("\n" + "=" * 70)
    if failures:
        print(f"❌ {failures}/{total_tests} test(s) failed")
        return 1
    print(f"✅ All {total_tests} tests passed")
    print("=" * 70 + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))

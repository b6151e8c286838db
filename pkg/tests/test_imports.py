"""Tests that every subpackage imports cleanly on its own."""

import subprocess
import sys

import pytest

MODULES = [
    "hs_signorm",
    "hs_signorm.cli",
    "hs_signorm.limit",
    "hs_signorm.limit.bridge",
    "hs_signorm.orderstats",
    "hs_signorm.orderstats.estimators",
    "hs_signorm.transport",
    "hs_signorm.transport.functionals",
    "hs_signorm.routes",
]


@pytest.mark.parametrize("module", MODULES)
def test_fresh_interpreter_import(module):
    """Importing the module first in a new interpreter raises no circular-import error."""
    result = subprocess.run(
        [sys.executable, "-c", f"import {module}"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0, result.stderr

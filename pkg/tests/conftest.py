import textwrap
from pathlib import Path
from typing import Callable

import pytest

from ntlab.gauss_poisson import make_window
from ntlab.testing import primes_below


@pytest.fixture
def small_primes():
    return primes_below(200)


@pytest.fixture(scope="session")
def window8():
    return make_window(8)


@pytest.fixture(scope="session")
def window32():
    return make_window(32)


@pytest.fixture
def write_config(tmp_path) -> Callable[[str], Path]:
    """Writes an INI sweep file into the test's temp directory"""

    def _write_config(text: str, name: str = "sweep.ini") -> Path:
        path = tmp_path / name
        path.write_text(textwrap.dedent(text).lstrip(), encoding="utf-8")
        return path

    return _write_config


@pytest.fixture
def mean_config(write_config, tmp_path):
    return write_config(
        f"""
        [sweep]
        command = mean
        out = {tmp_path / "mean.jsonl"}
        csv = {tmp_path / "mean.csv"}

        [mean]
        d = 2
        x = 1e3, 1e4
        y = 1e2, 1e3
        """
    )

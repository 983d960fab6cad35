import subprocess
import sys

import pytest


@pytest.fixture
def run_cli():
    def run(*args, stdin=None):
        result = subprocess.run(
            [sys.executable, "-m", "trackcast", *args],
            input=stdin,
            capture_output=True,
            text=True,
        )
        return result.returncode, result.stdout, result.stderr

    return run


@pytest.fixture
def constant_spec(tmp_path):
    # constant trajectory at e on both axes: a = 0, b = 1, noiseless
    path = tmp_path / "constant.spec"
    path.write_text("a_x = 0\nb_x = 1\na_y = 0\nb_y = 1\nn_frames = 20\n")
    return path


@pytest.fixture
def growth_spec(tmp_path):
    path = tmp_path / "growth.spec"
    path.write_text(
        "a_x = 0.01\nb_x = 2\na_y = 0.005\nb_y = 3\nn_frames = 100\nseed = 7\n"
    )
    return path

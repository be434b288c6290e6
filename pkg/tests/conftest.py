import numpy as np
import pytest

from centerlab.lib.matrix import DataMatrix


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small():
    """El 2×3 de los ejemplos a mano: μ_G = 3.5, μ_d = [2, 5], μ_n = [2.5, 3.5, 4.5]."""
    return DataMatrix([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])


@pytest.fixture
def gaussian(rng):
    return DataMatrix(rng.standard_normal((10, 20)))


@pytest.fixture
def write_csv():
    def write(path, rows, delimiter=","):
        path.write_text("\n".join(delimiter.join(str(v) for v in row) for row in rows) + "\n")
        return path
    return write

import pathlib

import numpy as np
import pytest

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def faddeeva_fixture():
    raw = np.loadtxt(DATA / "faddeeva_fixture.csv", delimiter=",", skiprows=2)
    return raw[:, 0] + 1j * raw[:, 1], raw[:, 2] + 1j * raw[:, 3]

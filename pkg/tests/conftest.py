from pathlib import Path

import numpy as np
import pytest

from qcss import factorize, pi_perm

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def perm15():
    return pi_perm(factorize(15), 3)


@pytest.fixture(scope="session")
def perm35():
    return pi_perm(factorize(35), 5)


@pytest.fixture(scope="session")
def ref35_k1():
    """Frozen reference phases for n=35, k=1, m=0, e=5."""
    return np.loadtxt(DATA_DIR / "n35_k1_m0_phases.txt", dtype=np.int64)


@pytest.fixture(scope="session")
def ref35_k2():
    """Frozen reference phases for n=35, k=2, m=0, e=5."""
    return np.loadtxt(DATA_DIR / "n35_k2_m0_phases.txt", dtype=np.int64)

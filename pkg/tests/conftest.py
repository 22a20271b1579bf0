import math
from collections.abc import Iterator

import numpy as np
import pytest

from triuncert.algebra import PAULI, PAULI_TRIPLE, ObservableTriple
from triuncert.config import SEED_ENV_VAR
from triuncert.matrix import QuantumState, basis_state


@pytest.fixture(scope="session")
def pauli_triple() -> ObservableTriple:
    return PAULI_TRIPLE


@pytest.fixture(scope="session")
def weighted_pauli_triple() -> ObservableTriple:
    """(sigma_1, 2 sigma_2, 3 sigma_3): R is diagonal in the Bell basis with
    eigenvalues 2, 4, 0, -6, so no product state is an eigenvector and the
    separable variance floor is exactly 1."""
    return ObservableTriple((PAULI[0], PAULI[1].scaled(2.0), PAULI[2].scaled(3.0)))


@pytest.fixture(scope="session")
def singlet() -> QuantumState:
    return QuantumState.pure(np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0))


@pytest.fixture(scope="session")
def zero_state() -> QuantumState:
    return basis_state(2, 0)


@pytest.fixture(scope="session")
def plus_state() -> QuantumState:
    return QuantumState.pure([1.0, 1.0], normalize=True)


@pytest.fixture(autouse=True)
def _isolate_seed_env(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    yield

"""Pauli operators, observable triples and the global operator R = sum_j H_j ⊗ sigma_j.

Indices are 0-based in code; ``(j + 1) % 3`` and ``(j + 2) % 3`` give the cyclic
successors used by the commutator terms.
"""

import hashlib
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from .errors import DimensionMismatchError, InvalidMatrixError
from .matrix import (
    ComplexMatrix,
    Observable,
    anticommutator,
    commutator,
    kron,
    spectral_norm,
)

SIGMA_1 = Observable(np.array([[0, 1], [1, 0]], dtype=np.complex128))
SIGMA_2 = Observable(np.array([[0, -1j], [1j, 0]], dtype=np.complex128))
SIGMA_3 = Observable(np.array([[1, 0], [0, -1]], dtype=np.complex128))
IDENTITY_2 = np.eye(2, dtype=np.complex128)


def successor(j: int, step: int = 1) -> int:
    return (j + step) % 3


@dataclass(frozen=True)
class PauliSet:
    sigma: tuple[Observable, Observable, Observable] = (SIGMA_1, SIGMA_2, SIGMA_3)

    def __getitem__(self, j: int) -> Observable:
        return self.sigma[j]


PAULI = PauliSet()


@dataclass(frozen=True, eq=False)
class ObservableTriple:
    h: tuple[Observable, Observable, Observable]

    def __post_init__(self) -> None:
        members = tuple(self.h)
        if len(members) != 3:
            raise InvalidMatrixError(f"a triple needs exactly 3 observables, got {len(members)}")
        dims = {member.dim for member in members}
        if len(dims) != 1:
            first, *rest = (member.dim for member in members)
            raise DimensionMismatchError(
                first, next(d for d in rest if d != first), "triple members differ in dimension"
            )
        object.__setattr__(self, "h", members)

    @classmethod
    def from_matrices(cls, matrices: Iterable[Any]) -> "ObservableTriple":
        return cls(tuple(Observable(m) for m in matrices))  # type: ignore[arg-type]

    @property
    def dim(self) -> int:
        return self.h[0].dim

    def __iter__(self) -> Iterator[Observable]:
        return iter(self.h)

    def __getitem__(self, j: int) -> Observable:
        return self.h[j]

    def commutators(self) -> tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
        """C_j = [H_j, H_{j+1}] for j = 0, 1, 2."""
        c0, c1, c2 = (commutator(self.h[j], self.h[successor(j)]) for j in range(3))
        return c0, c1, c2

    def stacked(self) -> npt.NDArray[np.complex128]:
        return np.stack([member.matrix for member in self.h])

    def fingerprint(self) -> str:
        """sha256 over the exact entries; equal triples always share a fingerprint."""
        digest = hashlib.sha256()
        digest.update(str(self.dim).encode())
        digest.update(np.ascontiguousarray(self.stacked()).tobytes())
        return digest.hexdigest()


PAULI_TRIPLE = ObservableTriple(PAULI.sigma)


def build_R(t: ObservableTriple) -> Observable:
    total = sum((kron(t[j], PAULI[j]) for j in range(3)), np.zeros((2 * t.dim, 2 * t.dim)))
    return Observable(total)


def r_squared_expansion(t: ObservableTriple) -> Observable:
    """sum_j H_j^2 ⊗ I + sum_j [H_j, H_{j+1}] ⊗ i sigma_{j+2}."""
    square_terms = sum(kron(t[j].matrix @ t[j].matrix, IDENTITY_2) for j in range(3))
    commutator_terms = sum(
        kron(c, 1j * PAULI[successor(j, 2)].matrix) for j, c in enumerate(t.commutators())
    )
    return Observable(square_terms + commutator_terms)


def expansion_residual(t: ObservableTriple) -> tuple[float, float]:
    """(||R^2 - expansion||, ||R||) for checking the expansion identity."""
    r = build_R(t).matrix
    residual = spectral_norm(r @ r - r_squared_expansion(t).matrix)
    return residual, spectral_norm(r)


def anticommutation_profile(t: ObservableTriple) -> npt.NDArray[np.float64]:
    """Residuals ||C_j C_k + C_k C_j|| for j != k; all tiny certifies the Clifford condition."""
    c = t.commutators()
    table = np.zeros((3, 3))
    for j in range(3):
        for k in range(j + 1, 3):
            table[j, k] = table[k, j] = spectral_norm(anticommutator(c[j], c[k]))
    return table


def is_clifford(t: ObservableTriple, tol: float = 1e-9) -> bool:
    return bool(np.all(anticommutation_profile(t) <= tol))

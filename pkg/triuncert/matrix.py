"""Dense complex linear algebra for the small operators used throughout the package.

Matrices are ``complex128`` numpy arrays, validated on entry and frozen
(``writeable = False``) so they can be shared between threads.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt

from .config import VALIDATION_TOL
from .errors import (
    ConvergenceFailureError,
    DimensionMismatchError,
    InvalidMatrixError,
    InvalidStateError,
    NotHermitianError,
)

ComplexMatrix: TypeAlias = npt.NDArray[np.complex128]
ComplexVector: TypeAlias = npt.NDArray[np.complex128]
RealVector: TypeAlias = npt.NDArray[np.float64]


def _frozen(array: npt.NDArray[Any]) -> npt.NDArray[Any]:
    array.flags.writeable = False
    return array


def as_matrix(entries: Any) -> ComplexMatrix:
    """Copy ``entries`` into a validated, read-only square complex matrix."""
    try:
        matrix = np.array(entries, dtype=np.complex128)
    except (TypeError, ValueError) as ex:
        raise InvalidMatrixError(f"entries are not complex scalars: {ex}") from ex
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise InvalidMatrixError(f"expected a non-empty square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise InvalidMatrixError("matrix has non-finite entries")
    return _frozen(matrix)


def _as_vector(amplitudes: Any) -> ComplexVector:
    try:
        vector = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    except (TypeError, ValueError) as ex:
        raise InvalidStateError(f"amplitudes are not complex scalars: {ex}") from ex
    if vector.size == 0 or not np.all(np.isfinite(vector)):
        raise InvalidStateError("state vector is empty or has non-finite entries")
    return _frozen(vector)


def hermiticity_deviation(m: ComplexMatrix) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: ComplexMatrix, tol: float = VALIDATION_TOL) -> bool:
    scale = 1.0 + float(np.max(np.abs(m)))
    return hermiticity_deviation(m) <= tol * scale


def _check_hermitian(m: ComplexMatrix) -> None:
    if not is_hermitian(m):
        raise NotHermitianError(hermiticity_deviation(m))


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix)
        _check_hermitian(matrix)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def scaled(self, factor: float) -> "Observable":
        return Observable(factor * self.matrix)

    def shifted(self, offset: float) -> "Observable":
        return Observable(self.matrix - offset * np.eye(self.dim))


class StateKind(str, Enum):
    PURE = "pure"
    MIXED = "mixed"


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A pure vector or a density matrix; build through :meth:`pure` or :meth:`mixed`."""

    kind: StateKind
    vector: ComplexVector | None = None
    density: ComplexMatrix | None = None

    def __post_init__(self) -> None:
        if self.kind is StateKind.PURE:
            if self.vector is None or self.density is not None:
                raise InvalidStateError("pure state needs a vector and no density")
            vector = _as_vector(self.vector)
            norm = float(np.linalg.norm(vector))
            if abs(norm - 1.0) > VALIDATION_TOL:
                raise InvalidStateError(f"pure state has norm {norm!r}, expected 1")
            object.__setattr__(self, "vector", vector)
            return

        if self.density is None or self.vector is not None:
            raise InvalidStateError("mixed state needs a density and no vector")
        try:
            density = as_matrix(self.density)
        except InvalidMatrixError as ex:
            raise InvalidStateError(str(ex)) from ex
        if not is_hermitian(density):
            raise InvalidStateError(
                f"density is not Hermitian (deviation={hermiticity_deviation(density):.3e})"
            )
        trace = complex(np.trace(density))
        if abs(trace - 1.0) > VALIDATION_TOL:
            raise InvalidStateError(f"density has trace {trace!r}, expected 1")
        smallest = float(np.linalg.eigvalsh(density)[0])
        if smallest < -VALIDATION_TOL:
            raise InvalidStateError(f"density has negative eigenvalue {smallest!r}")
        object.__setattr__(self, "density", density)

    @classmethod
    def pure(cls, amplitudes: Any, *, normalize: bool = False) -> "QuantumState":
        vector = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if normalize:
            norm = np.linalg.norm(vector)
            if norm == 0:
                raise InvalidStateError("cannot normalize the zero vector")
            vector = vector / norm
        return cls(StateKind.PURE, vector=vector)

    @classmethod
    def mixed(cls, density: Any) -> "QuantumState":
        return cls(StateKind.MIXED, density=density)

    @property
    def dim(self) -> int:
        if self.vector is not None:
            return self.vector.shape[0]
        assert self.density is not None
        return self.density.shape[0]

    @property
    def is_pure(self) -> bool:
        return self.kind is StateKind.PURE

    def density_matrix(self) -> ComplexMatrix:
        if self.vector is not None:
            return _frozen(np.outer(self.vector, self.vector.conj()))
        assert self.density is not None
        return self.density


def basis_state(dim: int, index: int) -> QuantumState:
    amplitudes = np.zeros(dim, dtype=np.complex128)
    amplitudes[index] = 1.0
    return QuantumState.pure(amplitudes)


def maximally_mixed(dim: int) -> QuantumState:
    return QuantumState.mixed(np.eye(dim, dtype=np.complex128) / dim)


def product_state(mu: QuantumState, nu: QuantumState) -> QuantumState:
    """mu ⊗ nu, kept pure when both factors are pure."""
    if mu.vector is not None and nu.vector is not None:
        return QuantumState.pure(np.kron(mu.vector, nu.vector))
    return QuantumState.mixed(np.kron(mu.density_matrix(), nu.density_matrix()))


MatrixLike: TypeAlias = ComplexMatrix | Observable


def _data(m: MatrixLike) -> ComplexMatrix:
    if isinstance(m, Observable):
        return m.matrix
    return np.asarray(m, dtype=np.complex128)


def kron(a: MatrixLike, b: MatrixLike) -> ComplexMatrix:
    return _frozen(np.kron(_data(a), _data(b)))


def commutator(a: MatrixLike, b: MatrixLike) -> ComplexMatrix:
    left, right = _data(a), _data(b)
    if left.shape != right.shape:
        raise DimensionMismatchError(
            left.shape[0], right.shape[0], "commutator needs equal dimensions"
        )
    return _frozen(left @ right - right @ left)


def anticommutator(a: MatrixLike, b: MatrixLike) -> ComplexMatrix:
    left, right = _data(a), _data(b)
    if left.shape != right.shape:
        raise DimensionMismatchError(
            left.shape[0], right.shape[0], "anticommutator needs equal dimensions"
        )
    return _frozen(left @ right + right @ left)


def eig_hermitian(m: MatrixLike) -> tuple[RealVector, ComplexMatrix]:
    """Ascending eigenvalues and orthonormal eigenvector columns of a Hermitian matrix."""
    matrix = _data(m)
    if not isinstance(m, Observable):
        _check_hermitian(matrix)
    try:
        eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as ex:
        raise ConvergenceFailureError(f"Hermitian eigensolver did not converge: {ex}") from ex
    return _frozen(eigenvalues), _frozen(eigenvectors)


def operator_norm(m: MatrixLike) -> float:
    eigenvalues, _ = eig_hermitian(m)
    return float(np.max(np.abs(eigenvalues)))


def spectral_norm(m: MatrixLike) -> float:
    """Largest singular value; used for residuals that need not be Hermitian."""
    return float(np.linalg.norm(_data(m), 2))


def trace(m: MatrixLike) -> complex:
    return complex(np.trace(_data(m)))


def expectation(obs: MatrixLike, state: QuantumState) -> complex:
    matrix = _data(obs)
    if matrix.shape[0] != state.dim:
        raise DimensionMismatchError(
            state.dim, matrix.shape[0], "observable and state dimensions differ"
        )
    if state.vector is not None:
        return complex(np.vdot(state.vector, matrix @ state.vector))
    assert state.density is not None
    return complex(np.einsum("ij,ji->", state.density, matrix))

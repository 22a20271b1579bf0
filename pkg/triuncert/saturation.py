"""Qubit states with |<sigma_j>| = 1/sqrt(3) and the partner state that makes the
product-state bound on the commutator coupling tight."""

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import PAULI, ObservableTriple, successor
from .config import ASSERT_TOL, TIE_TOL
from .errors import DimensionMismatchError, InvalidStateError
from .matrix import QuantumState, expectation

logger = logging.getLogger(__name__)

_E_PLUS = np.exp(1j * math.pi / 4)
_E_MINUS = np.exp(-1j * math.pi / 4)

# Sign pattern of (<sigma_1>, <sigma_2>, <sigma_3>) -> (case number, phase of the |1> amplitude).
# The sign of <sigma_3> decides which amplitude carries the larger weight.
_CASES: dict[tuple[int, int, int], tuple[int, complex]] = {
    (+1, +1, +1): (1, _E_PLUS),
    (+1, +1, -1): (2, _E_PLUS),
    (+1, -1, +1): (3, _E_MINUS),
    (-1, +1, +1): (4, -_E_MINUS),
    (+1, -1, -1): (5, _E_MINUS),
    (-1, +1, -1): (6, -_E_MINUS),
    (-1, -1, +1): (7, -_E_PLUS),
    (-1, -1, -1): (8, -_E_PLUS),
}


@dataclass(frozen=True)
class SignPattern:
    s: tuple[int, int, int]

    def __post_init__(self) -> None:
        signs = tuple(int(x) for x in self.s)
        if len(signs) != 3 or any(x not in (-1, 1) for x in signs):
            raise InvalidStateError(f"sign pattern must be three entries of +1/-1, got {self.s}")
        object.__setattr__(self, "s", signs)

    @classmethod
    def all(cls) -> list["SignPattern"]:
        """The eight patterns in case order."""
        return [cls(signs) for signs in _CASES]

    @property
    def case(self) -> int:
        return _CASES[self.s][0]

    def __str__(self) -> str:
        return "{" + ",".join("+" if x > 0 else "-" for x in self.s) + "}"


def appendix_state(p: SignPattern) -> QuantumState:
    """Pure qubit state with <sigma_j> = p_j / sqrt(3)."""
    _, phase = _CASES[p.s]
    shift = p.s[2] * math.sqrt(3.0) / 6.0
    amplitudes = [math.sqrt(0.5 + shift), phase * math.sqrt(0.5 - shift)]
    return QuantumState.pure(amplitudes)


def bloch_vector(state: QuantumState) -> tuple[float, float, float]:
    if state.dim != 2:
        raise DimensionMismatchError(2, state.dim, "Bloch vectors are defined for qubits")
    b0, b1, b2 = (expectation(sigma, state).real for sigma in PAULI.sigma)
    return b0, b1, b2


class PartnerChoice(NamedTuple):
    nu: QuantumState
    achieved: float
    target: float
    pattern: SignPattern


def coupling_coefficients(t: ObservableTriple, mu: QuantumState) -> tuple[float, float, float]:
    """c_j = <i[H_j, H_{j+1}]>_mu, the weight multiplying <sigma_{j+2}>_nu."""
    if mu.dim != t.dim:
        raise DimensionMismatchError(t.dim, mu.dim, "mu does not live on the triple's space")
    c0, c1, c2 = (expectation(1j * c, mu).real for c in t.commutators())
    return c0, c1, c2


def saturating_partner(t: ObservableTriple, mu: QuantumState) -> PartnerChoice:
    """Pick the appendix state whose <sigma_{j+2}> opposes the sign of c_j for every j.

    A coefficient within TIE_TOL of zero defaults its pattern entry to +1.
    """
    coefficients = coupling_coefficients(t, mu)
    signs = [1, 1, 1]
    for j, c in enumerate(coefficients):
        if abs(c) > TIE_TOL:
            signs[successor(j, 2)] = -1 if c > 0 else 1
    pattern = SignPattern((signs[0], signs[1], signs[2]))
    nu = appendix_state(pattern)

    bloch = bloch_vector(nu)
    achieved = sum(coefficients[j] * bloch[successor(j, 2)] for j in range(3))
    moduli = [abs(expectation(c, mu)) for c in t.commutators()]
    target = -sum(moduli) / math.sqrt(3.0)
    if abs(achieved - target) > ASSERT_TOL:
        logger.warning(
            "partner %s reaches %.17g, bound is %.17g", pattern, achieved, target
        )
    return PartnerChoice(nu=nu, achieved=achieved, target=target, pattern=pattern)

"""Variances, commutator expectations and the sum/product triple uncertainty relations.

For an observable triple H_1, H_2, H_3 and any state,

    sum_j  Delta H_j^2  >= (1/sqrt 3)   sum_j  |<[H_j, H_{j+1}]>|
    prod_j Delta H_j^2  >= (1/sqrt 3)^3 prod_j |<[H_j, H_{j+1}]>|

:func:`audit_triple` reports both sides and the slack instead of a boolean.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .algebra import PAULI, ObservableTriple, successor
from .config import DEGENERATE_VARIANCE, VALIDATION_TOL
from .errors import DegenerateVarianceError, DimensionMismatchError, InternalConsistencyError
from .matrix import MatrixLike, Observable, QuantumState, commutator, expectation

logger = logging.getLogger(__name__)

INV_SQRT3 = 1.0 / math.sqrt(3.0)


def variance(obs: MatrixLike, state: QuantumState) -> float:
    """<O^2> - <O>^2, with round-off below zero clamped."""
    matrix = obs.matrix if isinstance(obs, Observable) else np.asarray(obs)
    second = expectation(matrix @ matrix, state).real
    mean = expectation(matrix, state).real
    value = second - mean * mean
    if value < 0:
        if value < -VALIDATION_TOL * max(1.0, abs(second)):
            raise InternalConsistencyError(f"variance evaluated to {value!r}")
        return 0.0
    return value


def _check_subsystem(t: ObservableTriple, state: QuantumState) -> None:
    if state.dim != t.dim:
        raise DimensionMismatchError(t.dim, state.dim, "state does not live on the triple's space")


@dataclass(frozen=True)
class UncertaintyAudit:
    variances: tuple[float, float, float]
    commutator_moduli: tuple[float, float, float]
    lhs_sum: float
    rhs_sum: float
    lhs_prod: float
    rhs_prod: float

    @property
    def slack_sum(self) -> float:
        return self.lhs_sum - self.rhs_sum

    @property
    def slack_prod(self) -> float:
        return self.lhs_prod - self.rhs_prod

    @property
    def ratio_sum(self) -> float:
        """lhs/rhs of the sum form; infinite when the bound is zero."""
        return self.lhs_sum / self.rhs_sum if self.rhs_sum > 0 else math.inf

    def to_dict(self) -> dict[str, object]:
        return {
            "variances": list(self.variances),
            "commutator_moduli": list(self.commutator_moduli),
            "lhs_sum": self.lhs_sum,
            "rhs_sum": self.rhs_sum,
            "lhs_prod": self.lhs_prod,
            "rhs_prod": self.rhs_prod,
            "slack_sum": self.slack_sum,
            "slack_prod": self.slack_prod,
        }


def commutator_expectations(t: ObservableTriple, state: QuantumState) -> tuple[complex, ...]:
    """<[H_j, H_{j+1}]> for j = 0, 1, 2; purely imaginary for Hermitian members."""
    _check_subsystem(t, state)
    return tuple(expectation(c, state) for c in t.commutators())


def audit_triple(t: ObservableTriple, state: QuantumState) -> UncertaintyAudit:
    _check_subsystem(t, state)
    v0, v1, v2 = (variance(h, state) for h in t)
    m0, m1, m2 = (abs(c) for c in commutator_expectations(t, state))
    return UncertaintyAudit(
        variances=(v0, v1, v2),
        commutator_moduli=(m0, m1, m2),
        lhs_sum=v0 + v1 + v2,
        rhs_sum=INV_SQRT3 * (m0 + m1 + m2),
        lhs_prod=v0 * v1 * v2,
        rhs_prod=INV_SQRT3**3 * (m0 * m1 * m2),
    )


def center_triple(t: ObservableTriple, state: QuantumState) -> ObservableTriple:
    """H_j' = H_j - <H_j> I, so every member has zero mean in ``state``."""
    _check_subsystem(t, state)
    h0, h1, h2 = (h.shifted(expectation(h, state).real) for h in t)
    return ObservableTriple((h0, h1, h2))


def equalize_variances(
    t: ObservableTriple, state: QuantumState
) -> tuple[ObservableTriple, tuple[float, float, float]]:
    """Rescale H_j by kappa_j = (prod_k Delta H_k^2)^(1/6) / Delta H_j.

    The products of variances and of commutator moduli are unchanged while the
    three variances become equal.
    """
    _check_subsystem(t, state)
    variances = [variance(h, state) for h in t]
    for j, v in enumerate(variances):
        if v <= DEGENERATE_VARIANCE:
            raise DegenerateVarianceError(j, v)
    geometric = math.prod(variances) ** (1.0 / 6.0)
    k0, k1, k2 = (geometric / math.sqrt(v) for v in variances)
    scaled = ObservableTriple((t[0].scaled(k0), t[1].scaled(k1), t[2].scaled(k2)))
    logger.debug("equalized variances %s with kappas %s", variances, (k0, k1, k2))
    return scaled, (k0, k1, k2)


def robertson_check(a: Observable, b: Observable, state: QuantumState) -> float:
    """Slack of Delta A Delta B >= |<[A, B]>| / 2."""
    for obs in (a, b):
        if obs.dim != state.dim:
            raise DimensionMismatchError(
                state.dim, obs.dim, "observable and state dimensions differ"
            )
    spread = math.sqrt(variance(a, state) * variance(b, state))
    return spread - 0.5 * abs(expectation(commutator(a, b), state))


@dataclass(frozen=True)
class ProductMoments:
    mean: float
    second: float
    variance: float
    cauchy_bound: float
    variance_lower_bound: float


def product_moments(t: ObservableTriple, mu: QuantumState, nu: QuantumState) -> ProductMoments:
    """Moments of R in mu ⊗ nu computed from the factors alone.

    Tr(mu⊗nu)R   = sum_j <H_j> <sigma_j>
    Tr(mu⊗nu)R^2 = sum_j <H_j^2> + sum_j <i[H_j,H_{j+1}]> <sigma_{j+2}>

    ``cauchy_bound`` bounds the squared mean because the Bloch vector of nu has
    norm at most one; ``variance_lower_bound`` follows from it.
    """
    _check_subsystem(t, mu)
    if nu.dim != 2:
        raise DimensionMismatchError(2, nu.dim, "partner state must be a qubit")
    means = [expectation(h, mu).real for h in t]
    squares = [expectation(h.matrix @ h.matrix, mu).real for h in t]
    cross = [expectation(1j * c, mu).real for c in t.commutators()]
    bloch = [expectation(s, nu).real for s in PAULI.sigma]

    mean = sum(means[j] * bloch[j] for j in range(3))
    coupling = sum(cross[j] * bloch[successor(j, 2)] for j in range(3))
    second = sum(squares) + coupling
    spreads = sum(squares[j] - means[j] ** 2 for j in range(3))
    return ProductMoments(
        mean=mean,
        second=second,
        variance=second - mean * mean,
        cauchy_bound=sum(m * m for m in means),
        variance_lower_bound=spreads + coupling,
    )

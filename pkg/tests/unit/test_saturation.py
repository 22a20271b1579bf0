import math

import numpy as np
import pytest

from tests.oracles import best_pattern_value, bloch
from triuncert.algebra import PAULI, PAULI_TRIPLE, build_R
from triuncert.config import SampleConfig
from triuncert.errors import DimensionMismatchError, InvalidStateError
from triuncert.matrix import expectation, maximally_mixed, product_state
from triuncert.sampling import ginibre_density, haar_pure, random_triple, spawn_seeds
from triuncert.saturation import (
    SignPattern,
    appendix_state,
    bloch_vector,
    coupling_coefficients,
    saturating_partner,
)
from triuncert.uncertainty import audit_triple, product_moments, variance

HIGH = math.sqrt(0.5 + math.sqrt(3.0) / 6.0)
LOW = math.sqrt(0.5 - math.sqrt(3.0) / 6.0)


@pytest.mark.parametrize("pattern", SignPattern.all(), ids=str)
def test_appendix_state__has_signed_pauli_expectations(pattern):
    state = appendix_state(pattern)

    assert np.allclose(bloch(state), np.array(pattern.s) / math.sqrt(3.0), atol=1e-12)
    assert np.linalg.norm(bloch_vector(state)) == pytest.approx(1.0)


def test_appendix_state__explicit_amplitudes_for_first_and_last_case():
    first = appendix_state(SignPattern((1, 1, 1)))
    last = appendix_state(SignPattern((-1, -1, -1)))

    assert np.allclose(first.vector, [HIGH, np.exp(1j * math.pi / 4) * LOW])
    assert np.allclose(last.vector, [LOW, -np.exp(1j * math.pi / 4) * HIGH])


def test_sign_pattern__all_lists_eight_distinct_cases():
    patterns = SignPattern.all()

    assert [p.case for p in patterns] == list(range(1, 9))
    assert len({p.s for p in patterns}) == 8
    assert str(patterns[0]) == "{+,+,+}"


@pytest.mark.parametrize("signs", [(1, 0, 1), (1, 1), (2, 1, -1)])
def test_sign_pattern__rejects_invalid_entries(signs):
    with pytest.raises(InvalidStateError):
        SignPattern(signs)  # type: ignore[arg-type]


def test_bloch_vector__rejects_non_qubit():
    with pytest.raises(DimensionMismatchError):
        bloch_vector(maximally_mixed(3))


def test_coupling_coefficients__pauli_zero_state(zero_state):
    # i[s1,s2] = -2 s3, the others average to zero in |0>.
    assert coupling_coefficients(PAULI_TRIPLE, zero_state) == pytest.approx((-2.0, 0.0, 0.0))


def test_saturating_partner__pauli_appendix_state_pairs_with_itself():
    mu = appendix_state(SignPattern((1, 1, 1)))
    choice = saturating_partner(PAULI_TRIPLE, mu)

    assert choice.pattern == SignPattern((1, 1, 1))
    assert choice.achieved == pytest.approx(-2.0)
    assert choice.target == pytest.approx(-2.0)


def test_saturating_partner__ties_default_to_plus():
    choice = saturating_partner(PAULI_TRIPLE, maximally_mixed(2))

    assert choice.pattern == SignPattern((1, 1, 1))
    assert choice.achieved == pytest.approx(0.0)
    assert choice.target == pytest.approx(0.0)


@pytest.mark.parametrize("dim", [2, 3, 4])
def test_saturating_partner__reaches_bound_for_random_inputs(dim):
    for seed in spawn_seeds(500 + dim, 340):
        triple_seed, state_seed = spawn_seeds(seed, 2)
        t = random_triple(SampleConfig(seed=triple_seed, dim=dim))
        if seed % 2:
            mu = haar_pure(SampleConfig(seed=state_seed, dim=dim))
        else:
            mu = ginibre_density(SampleConfig(seed=state_seed, dim=dim, rank=dim))
        choice = saturating_partner(t, mu)

        assert abs(choice.achieved - choice.target) <= 1e-9
        assert choice.achieved == pytest.approx(best_pattern_value(t, mu), abs=1e-9)


def test_saturating_partner__closes_second_moment_of_R():
    t = random_triple(SampleConfig(seed=61, dim=3))
    mu = haar_pure(SampleConfig(seed=62, dim=3))
    choice = saturating_partner(t, mu)
    moments = product_moments(t, mu, choice.nu)
    squares = sum(expectation(h.matrix @ h.matrix, mu).real for h in t)

    assert moments.second == pytest.approx(squares + choice.target, abs=1e-10)


def test_saturating_partner__partner_expectations_follow_pattern():
    choice = saturating_partner(PAULI_TRIPLE, haar_pure(SampleConfig(seed=3, dim=2)))

    for j, sign in enumerate(choice.pattern.s):
        assert expectation(PAULI[j], choice.nu).real == pytest.approx(sign / math.sqrt(3.0))


@pytest.mark.parametrize("pattern", SignPattern.all(), ids=str)
def test_saturating_partner__pauli_product_variance_is_spread_plus_coupling(pattern):
    mu = appendix_state(pattern)
    choice = saturating_partner(PAULI_TRIPLE, mu)
    spread = sum(audit_triple(PAULI_TRIPLE, mu).variances)

    observed = variance(build_R(PAULI_TRIPLE), product_state(mu, choice.nu))

    assert choice.pattern == pattern
    assert observed == pytest.approx(spread + choice.achieved, abs=1e-9)
    assert observed == pytest.approx(0.0, abs=1e-9)

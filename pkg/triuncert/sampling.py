"""Seedable random states and observables for fuzz campaigns.

Every public function takes a :class:`SampleConfig` and builds a fresh
``numpy.random.Generator`` (PCG64) from ``cfg.seed``; nothing reads a global
generator. Campaigns derive independent per-trial seeds with :func:`spawn_seeds`,
which uses ``SeedSequence.spawn`` so child streams never overlap.
"""

import numpy as np

from .algebra import ObservableTriple
from .config import SampleConfig
from .errors import ConfigInvalidError
from .matrix import ComplexMatrix, ComplexVector, Observable, QuantumState


def generator(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def spawn_seeds(seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...]) -> ComplexMatrix:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _haar_vector(rng: np.random.Generator, dim: int) -> ComplexVector:
    vector = _complex_gaussian(rng, (dim,))
    # Global phase fixed so the first amplitude is real and non-negative.
    lead = vector[0]
    if abs(lead) > 0:
        vector = vector * (abs(lead) / lead)
        vector[0] = abs(lead)
    return vector / np.linalg.norm(vector)


def _haar_unitary(rng: np.random.Generator, dim: int) -> ComplexMatrix:
    q, r = np.linalg.qr(_complex_gaussian(rng, (dim, dim)))
    diagonal = np.diagonal(r)
    return q * (diagonal / np.abs(diagonal))


def _hermitian(rng: np.random.Generator, dim: int, scale: float) -> ComplexMatrix:
    g = _complex_gaussian(rng, (dim, dim))
    return scale * (g + g.conj().T) / 2.0


def haar_pure(cfg: SampleConfig) -> QuantumState:
    return QuantumState.pure(_haar_vector(generator(cfg.seed), cfg.dim))


def ginibre_density(cfg: SampleConfig) -> QuantumState:
    """rho = G G^dagger / Tr(G G^dagger) with G of shape dim x rank."""
    g = _complex_gaussian(generator(cfg.seed), (cfg.dim, cfg.rank))
    positive = g @ g.conj().T
    rho = positive / np.trace(positive).real
    return QuantumState.mixed((rho + rho.conj().T) / 2.0)


def random_unitary(cfg: SampleConfig) -> ComplexMatrix:
    return _haar_unitary(generator(cfg.seed), cfg.dim)


def random_hermitian(cfg: SampleConfig) -> Observable:
    return Observable(_hermitian(generator(cfg.seed), cfg.dim, cfg.scale))


def random_triple(cfg: SampleConfig) -> ObservableTriple:
    rng = generator(cfg.seed)
    h0, h1, h2 = (Observable(_hermitian(rng, cfg.dim, cfg.scale)) for _ in range(3))
    return ObservableTriple((h0, h1, h2))


def _involution(rng: np.random.Generator, dim: int) -> Observable:
    signs = rng.choice(np.array([-1.0, 1.0]), size=dim)
    if dim >= 2 and abs(signs.sum()) == dim:
        signs[rng.integers(dim)] *= -1.0
    u = _haar_unitary(rng, dim)
    matrix = (u * signs) @ u.conj().T
    return Observable((matrix + matrix.conj().T) / 2.0)


def random_involutive_triple(cfg: SampleConfig) -> ObservableTriple:
    """H_j = U diag(+-1) U^dagger with both signs present when dim >= 2."""
    rng = generator(cfg.seed)
    h0, h1, h2 = (_involution(rng, cfg.dim) for _ in range(3))
    return ObservableTriple((h0, h1, h2))


def random_product_components(
    cfg: SampleConfig, components: int, partner_dim: int | None = None
) -> list[tuple[float, QuantumState, QuantumState]]:
    """Dirichlet-uniform weights over Haar-random pure products mu ⊗ nu."""
    if components < 1:
        raise ConfigInvalidError(f"components must be positive, got {components}")
    rng = generator(cfg.seed)
    nu_dim = cfg.dim if partner_dim is None else partner_dim
    weights = rng.dirichlet(np.ones(components))
    return [
        (
            float(weight),
            QuantumState.pure(_haar_vector(rng, cfg.dim)),
            QuantumState.pure(_haar_vector(rng, nu_dim)),
        )
        for weight in weights
    ]


def mixture(components: list[tuple[float, QuantumState, QuantumState]]) -> QuantumState:
    if len(components) == 1:
        _, mu, nu = components[0]
        if mu.vector is not None and nu.vector is not None:
            return QuantumState.pure(np.kron(mu.vector, nu.vector))
    rho = sum(
        weight * np.kron(mu.density_matrix(), nu.density_matrix())
        for weight, mu, nu in components
    )
    rho = np.asarray(rho)
    return QuantumState.mixed((rho + rho.conj().T) / 2.0)


def random_separable(
    cfg: SampleConfig, components: int, partner_dim: int | None = None
) -> QuantumState:
    return mixture(random_product_components(cfg, components, partner_dim))

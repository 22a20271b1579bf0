import math
import os
from dataclasses import dataclass

from .errors import ConfigInvalidError

VALIDATION_TOL = 1e-10
ASSERT_TOL = 1e-9
VERDICT_MARGIN = 1e-9
TIE_TOL = 1e-12
DEGENERATE_VARIANCE = 1e-12

MAX_DIM = 32

# Bounds for triples with H_j^2 = I.
SECOND_MOMENT_BOUND = 9.0
EXPECTATION_BOUND = 3.0
SEPARABLE_EXPECTATION_BOUND = math.sqrt(3.0 + 2.0 * math.sqrt(3.0))

SEED_ENV_VAR = "TRIUNCERT_SEED"
_MAX_SEED = 2**64 - 1


def default_seed() -> int:
    """Seed used when none is given; ``TRIUNCERT_SEED`` overrides the default of 0."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 0
    try:
        seed = int(raw, 0)
    except ValueError as ex:
        raise ConfigInvalidError(
            f"{SEED_ENV_VAR}='{raw}' is not an integer seed"
        ) from ex
    return _check_seed(seed)


def _check_seed(seed: int) -> int:
    if not 0 <= seed <= _MAX_SEED:
        raise ConfigInvalidError(f"seed {seed} is outside the unsigned 64-bit range")
    return seed


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    dim: int
    rank: int = 1
    scale: float = 1.0

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        if self.dim < 1 or self.dim > MAX_DIM:
            raise ConfigInvalidError(f"dim must be in [1, {MAX_DIM}], got {self.dim}")
        if not 1 <= self.rank <= self.dim:
            raise ConfigInvalidError(
                f"rank must be in [1, dim={self.dim}], got {self.rank}"
            )
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ConfigInvalidError(f"scale must be positive, got {self.scale}")


@dataclass(frozen=True)
class FloorConfig:
    """Settings for the multi-start search of the separable variance floor."""

    restarts: int = 32
    max_iterations: int = 2000
    tolerance: float = 1e-12
    seed: int = 0
    grid_check: bool = False
    grid_step: float = math.pi / 60
    polish_candidates: int = 8

    def __post_init__(self) -> None:
        _check_seed(self.seed)
        if self.restarts < 1:
            raise ConfigInvalidError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iterations < 1:
            raise ConfigInvalidError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if not self.tolerance > 0:
            raise ConfigInvalidError(f"tolerance must be positive, got {self.tolerance}")
        if not 0 < self.grid_step <= math.pi / 60:
            raise ConfigInvalidError(
                f"grid_step must be in (0, pi/60], got {self.grid_step}"
            )
        if self.polish_candidates < 1:
            raise ConfigInvalidError(
                f"polish_candidates must be >= 1, got {self.polish_candidates}"
            )

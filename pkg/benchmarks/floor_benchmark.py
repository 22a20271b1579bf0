from benchbro import Case

from triuncert.algebra import PAULI_TRIPLE, build_R, expansion_residual
from triuncert.config import FloorConfig, SampleConfig
from triuncert.sampling import haar_pure, random_triple
from triuncert.uncertainty import audit_triple
from triuncert.witness import estimate_variance_floor, grid_floor

floor_case = Case(
    name="floor",
    case_type="cpu",
    metric_type="time",
    tags=["triuncert", "floor"],
    warmup_iterations=2,
    min_iterations=5,
    repeats=3,
)

algebra_case = Case(
    name="algebra",
    case_type="cpu",
    metric_type="time",
    tags=["triuncert", "algebra"],
    warmup_iterations=5,
    min_iterations=50,
    repeats=10,
)

QUTRIT_TRIPLE = random_triple(SampleConfig(seed=1, dim=3))
QUTRIT_STATE = haar_pure(SampleConfig(seed=2, dim=3))
LARGE_TRIPLE = random_triple(SampleConfig(seed=3, dim=16))


@algebra_case.benchmark()
def build_R_pauli():
    build_R(PAULI_TRIPLE)


@algebra_case.benchmark()
def expansion_residual_dim_16():
    expansion_residual(LARGE_TRIPLE)


@algebra_case.benchmark()
def audit_qutrit_triple():
    audit_triple(QUTRIT_TRIPLE, QUTRIT_STATE)


@floor_case.benchmark()
def multistart_floor_qutrit():
    estimate_variance_floor(QUTRIT_TRIPLE, FloorConfig(restarts=8))


@floor_case.benchmark()
def bloch_grid_floor_pauli():
    grid_floor(PAULI_TRIPLE)

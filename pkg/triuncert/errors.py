class TripleUncertaintyError(Exception):
    pass


class InvalidMatrixError(TripleUncertaintyError):
    pass


class DimensionMismatchError(TripleUncertaintyError):
    def __init__(self, expected: int, actual: int, message: str):
        super().__init__(f"{message} (expected={expected}, actual={actual})")
        self.expected = expected
        self.actual = actual
        self.message = message


class NotHermitianError(TripleUncertaintyError):
    def __init__(self, deviation: float, message: str = "matrix is not Hermitian"):
        super().__init__(f"{message} (deviation={deviation:.3e})")
        self.deviation = deviation
        self.message = message


class InvalidStateError(TripleUncertaintyError):
    pass


class ConvergenceFailureError(TripleUncertaintyError):
    pass


class DegenerateVarianceError(TripleUncertaintyError):
    def __init__(self, index: int, variance: float):
        super().__init__(
            f"variance of H{index + 1} is {variance:.3e}; rescaling is undefined"
        )
        self.index = index
        self.variance = variance


class InvolutionRequiredError(TripleUncertaintyError):
    def __init__(self, index: int, deviation: float):
        super().__init__(
            f"H{index + 1} does not square to the identity (deviation={deviation:.3e})"
        )
        self.index = index
        self.deviation = deviation


class ConfigInvalidError(TripleUncertaintyError):
    pass


class FloorMismatchError(TripleUncertaintyError):
    def __init__(
        self,
        expected: str,
        actual: str,
        message: str = "floor estimate was computed for a different triple",
    ):
        super().__init__(f"{message} (expected='{expected[:24]}', actual='{actual[:24]}')")
        self.expected = expected
        self.actual = actual


class WeightInvalidError(TripleUncertaintyError):
    pass


class InternalConsistencyError(TripleUncertaintyError):
    pass


class DocumentError(TripleUncertaintyError):
    def __init__(self, source: str, location: str | None, message: str):
        super().__init__(f"{message} (source='{source}', at='{location}')")
        self.source = source
        self.location = location
        self.message = message

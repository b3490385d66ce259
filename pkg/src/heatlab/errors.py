"""Exception hierarchy shared by all heatlab modules."""


class HeatlabError(Exception):
    pass


class GeometryError(HeatlabError):
    pass


class NonConvex(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class UnsupportedVariant(HeatlabError):
    pass


class LevelEmpty(GeometryError):
    pass


class NormalUndefined(GeometryError):
    pass


class ParamOutOfRange(HeatlabError, ValueError):
    pass


class NonpositiveTime(HeatlabError, ValueError):
    pass


class OutOfDomain(HeatlabError, ValueError):
    pass


class NonpositiveData(HeatlabError, ValueError):
    pass


class NumericalFailure(HeatlabError):
    """Raised when a numerical routine cannot meet its error target."""


class SeriesTooLong(NumericalFailure):
    pass


class QuadratureFailure(NumericalFailure):
    pass


class ConfigInvalid(HeatlabError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class SuiteFailed(HeatlabError):
    """One or more suite assertions failed; ``failures`` lists their names."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("failed assertions: " + ", ".join(self.failures))

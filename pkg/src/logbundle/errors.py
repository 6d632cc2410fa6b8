"""Exception hierarchy shared by all subpackages."""


class LogBundleError(Exception):
    """Base class for every error raised by logbundle."""


class DescriptorMismatch(LogBundleError):
    """Operands live over different fields or rings."""


class DivisionByZero(LogBundleError, ZeroDivisionError):
    pass


class IndexOutOfRange(LogBundleError, IndexError):
    pass


class ParseError(LogBundleError, ValueError):
    pass


class OrderMismatch(LogBundleError):
    pass


class ComputationBudgetExceeded(LogBundleError):
    """A configurable step cap was hit; the computation did not finish."""


class NotZeroDimensional(LogBundleError):
    pass


class NotHomogeneous(LogBundleError, ValueError):
    pass


# arrangement ingestion
class SchemaError(LogBundleError, ValueError):
    pass


class SingularComponent(LogBundleError, ValueError):
    pass


class DuplicateComponent(LogBundleError, ValueError):
    pass


class UnsupportedDegree(LogBundleError, ValueError):
    pass


class UnsupportedField(LogBundleError, ValueError):
    pass


class NormalCrossingsViolation(LogBundleError, ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# plane geometry
class SingularConic(LogBundleError, ValueError):
    pass


class DependentLinearForms(LogBundleError, ValueError):
    pass


class DegenerateQuadric(LogBundleError, ValueError):
    pass


class FamilyMismatch(LogBundleError, ValueError):
    pass


# cubic reconstruction
class ZeroKernelVector(LogBundleError, ValueError):
    pass


class InconsistentSystem(LogBundleError, ValueError):
    pass


# instability
class PreconditionViolated(LogBundleError, ValueError):
    pass


class SingularTestCurve(LogBundleError, ValueError):
    pass


class ChartMismatch(LogBundleError, ValueError):
    pass


class PositiveDimensionalLocus(LogBundleError):
    pass


class BudgetExceeded(ComputationBudgetExceeded):
    """Oracle candidate set larger than the configured cap."""


class NonRealField(LogBundleError, ValueError):
    pass


# command line
class UsageError(LogBundleError, ValueError):
    pass

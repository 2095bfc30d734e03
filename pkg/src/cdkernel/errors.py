"""Exception hierarchy shared by every module."""


class CDKernelError(ValueError):
    """Base class for all library errors."""


class InvalidArity(CDKernelError):
    pass


class InvalidArgument(CDKernelError):
    pass


class InvalidPartition(CDKernelError):
    pass


class NotAntisymmetric(CDKernelError):
    pass


class DegenerateMeasure(CDKernelError):
    pass


class DegenerateBasis(CDKernelError):
    pass


class CoincidentPoints(CDKernelError):
    pass


class SingularInput(CDKernelError):
    pass


class InvalidMeasure(CDKernelError):
    pass


class ParseError(CDKernelError):
    pass

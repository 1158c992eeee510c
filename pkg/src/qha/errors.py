"""Exception hierarchy.

Every error carries a stable kebab-case ``code`` so the command line tool can
emit machine-readable ``error: <code>: <message>`` lines.
"""

__all__ = [
    "QhaError",
    "ContextMismatch",
    "InvalidExponents",
    "NotHermitian",
    "NotMixedState",
    "NotNormalized",
    "NotAPartition",
    "NonHermitianKernel",
    "ComplexKernel",
    "AllZero",
    "ZeroSpreading",
    "ZeroAmbiguity",
    "NotRankOne",
    "NonBinaryMask",
]


class QhaError(ValueError):
    """Base class for precondition and domain errors."""

    code = "error"


class ContextMismatch(QhaError):
    """Operands belong to different contexts (grid size or tolerances differ)."""

    code = "context-mismatch"


class InvalidExponents(QhaError):
    """Exponents outside [1, inf] or violating the Young relation."""

    code = "invalid-exponents"


class NotHermitian(QhaError):
    code = "not-hermitian"


class NotMixedState(QhaError):
    """Operator is not positive with unit trace (within tolerance)."""

    code = "not-mixed-state"


class NotNormalized(QhaError):
    code = "not-normalized"


class NotAPartition(QhaError):
    """Domains fail to tile the grid (overlap or gap)."""

    code = "not-a-partition"


class NonHermitianKernel(QhaError):
    code = "non-hermitian-kernel"


class ComplexKernel(QhaError):
    """Kernel function has a non-negligible imaginary part."""

    code = "complex-kernel"


class AllZero(QhaError):
    code = "all-zero"


class ZeroSpreading(QhaError):
    """The state's spreading function vanishes somewhere; deconvolution is not unique."""

    code = "zero-spreading"


class ZeroAmbiguity(QhaError):
    """The window's ambiguity function vanishes somewhere; retrieval is not unique."""

    code = "zero-ambiguity"


class NotRankOne(QhaError):
    """Recovered operator is far from rank one; input was not a valid spectrogram."""

    code = "not-rank-one"


class NonBinaryMask(QhaError):
    """Deconvolved mask is not close to a 0/1 function; input was not a domain filter."""

    code = "non-binary-mask"

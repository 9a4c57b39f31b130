"""
Exception hierarchy for dworklab.
"""

from typing import Optional, Sequence


class DworklabError(Exception):
    """Root of every error raised by the package."""


# Input and usage errors

class VariableCountMismatch(DworklabError, ValueError):
    """Two polynomials (or a polynomial and a point) disagree on n."""


class VariableIndexError(DworklabError, IndexError):
    """A 1-based variable index outside 1..n."""


class ModulusMismatch(DworklabError, ValueError):
    """Field elements or polynomials over different primes were combined."""


class NotPrimeError(DworklabError, ValueError):
    """A modulus that should be prime is not."""


class DenominatorDivisibleByQ(DworklabError, ValueError):
    """Reduction mod q hit a coefficient whose denominator q divides."""

    def __init__(self, q: int, denominator: int):
        super().__init__(
            f'coefficient denominator {denominator} is divisible by q={q}'
        )
        self.q = q
        self.denominator = denominator


class SingularMatrixError(DworklabError, ValueError):
    """A change-of-variables matrix is not invertible."""


class ZeroPolynomialError(DworklabError, ValueError):
    """The zero polynomial was passed where a nonzero one is required."""


class ParameterRangeError(DworklabError, ValueError):
    """Numeric parameters outside the supported range."""


class FormSyntaxError(DworklabError, ValueError):
    """Malformed form text, with the 1-based position of the problem."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f'{message} (line {line}, column {column})')
        self.message = message
        self.line = line
        self.column = column


class ZeroDenominator(FormSyntaxError):
    """A coefficient of the form p/0."""


class VariableIndexZero(FormSyntaxError):
    """The variable x0; indices start at 1."""


# Analysis-level refusals

class PreconditionError(DworklabError):
    """The input is well formed but outside an analysis' hypotheses."""


class CharacteristicDividesDegree(PreconditionError):
    """Over F_q the degree is a multiple of q."""

    def __init__(self, q: int, degree: int):
        super().__init__(f'characteristic {q} divides degree {degree}')
        self.q = q
        self.degree = degree


class NotHomogeneous(PreconditionError):
    """A form (homogeneous polynomial) was required."""


class NotDworkRegular(PreconditionError):
    """The analysis requires a Dwork-regular input."""

    def __init__(self, message: str, failing_subset: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.failing_subset = list(failing_subset) if failing_subset else None


class DegenerateForm(PreconditionError):
    """Some nonzero v has sum_i v_i dF/dX_i identically zero."""


class PlanRefused(PreconditionError):
    """No counterexample plan exists for the requested parameters."""


class InfeasibleInstance(PreconditionError):
    """An instance violates one of the L, Q, R, S1 constraints."""

    def __init__(self, constraint: str, detail: str = ''):
        message = f'constraint {constraint} violated'
        if detail:
            message += f': {detail}'
        super().__init__(message)
        self.constraint = constraint


class TWindowEmpty(PreconditionError):
    """The admissible set of times t is empty for the chosen constants."""

    def __init__(self, inequality: str, detail: str = ''):
        message = f't-window empty, violated {inequality}'
        if detail:
            message += f' ({detail})'
        super().__init__(message)
        self.inequality = inequality


class HypothesisViolation(PreconditionError):
    """A numerical hypothesis of a bound (such as VN <= 1) fails."""


class NoPrimesInRange(PreconditionError):
    """No prime lies in [Q/2, Q]."""


# Computational failures

class MemoryCapExceeded(DworklabError):
    """A dense table would exceed the configured memory cap."""


class DensityAssertionError(DworklabError):
    """Fewer good pairs than the density bound promises."""


class WitnessNotFound(DworklabError):
    """No derivative witness inside [1, B_max]^r."""


class QuadratureNonConvergence(DworklabError):
    """Node doubling hit its cap before the tolerance was met."""


class CacheFormatError(DworklabError):
    """A cache file has a bad header or size."""

"""Exception hierarchy shared by every module of the package."""


class LPFZError(Exception):
    """Base class for all library errors."""


# kernel
class KernelError(LPFZError, ValueError):
    pass


class NonPositiveK(KernelError):
    pass


class ZeroM(KernelError):
    pass


class NegativeMu(KernelError):
    pass


class NonPositiveBeta(KernelError):
    pass


class NonPositiveA(KernelError):
    pass


class GrowthTooSlow(KernelError):
    pass


# quadrature
class QuadratureError(LPFZError):
    pass


class NoDecay(QuadratureError):
    pass


class MaxSubdivisionsExceeded(QuadratureError):
    pass


class NonFinite(QuadratureError):
    pass


# approx
class NTooSmall(LPFZError, ValueError):
    pass


# zeros
class ZeroSearchError(LPFZError):
    pass


class InconclusiveSample(ZeroSearchError):
    pass


class LostBracket(ZeroSearchError):
    pass


class InvalidBracket(ZeroSearchError, ValueError):
    pass


class ZeroOnContour(ZeroSearchError):
    pass


class PhaseJumpTooLarge(ZeroSearchError):
    pass


# factorization
class FactorizationError(LPFZError):
    pass


class NotCertified(FactorizationError):
    pass


class NonPositiveConstant(FactorizationError):
    pass


class UnmatchedDivisorZero(FactorizationError):
    pass


# positivity
class PositivityError(LPFZError):
    pass


class RingTooLarge(PositivityError):
    pass


class TailNotConverged(PositivityError):
    pass

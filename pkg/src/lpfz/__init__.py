"""Zeros and growth of Fourier transforms of exp(-q) kernels."""

from .kernel import KernelSpec, Form
from .quadrature import QuadratureSettings, DEFAULT_SETTINGS
from .transform import (
    ComplexPoint, ComplexValue, ExtendedKernel, cft, cft_approx, cft_extended,
    convolve_kernels, f2k, hn, transform_for,
)

__version__ = "0.1.0"

__all__ = [
    "__version__", "KernelSpec", "Form", "QuadratureSettings", "DEFAULT_SETTINGS",
    "ComplexPoint", "ComplexValue", "ExtendedKernel", "cft", "cft_approx",
    "cft_extended", "convolve_kernels", "f2k", "hn", "transform_for",
]

"""Spherical Hecke algebra of PGL_2 over a non-archimedean local field.

Convolution algebra, interacting Fock space structure, the Kesten spectral
measure, Macdonald spherical functions and the spherical Fourier pair.
"""
from .exactnum import QExt, ContextError
from .hecke_algebra import (BasisTag, HeckeElement, RadialFunction, change_basis, convolve,
                            hecke_T, inner_product, phi, psi, t_prime, unit)
from .fock import JacobiCoefficients, build_operators, moment_path_sum
from .spectral import SpectralMeasure, kesten_density
from .plancherel import SpectralParam, fourier, inverse_fourier, spherical_macdonald

__version__ = "0.1.0"

"""Harmonic oscillator with su_q(2)-invariant angular part.

Exact q-deformed angular operators and harmonics, deformed scalar products,
radial Laguerre states, spectra for the C_q and C'_q Casimir choices on both
the real and unit-circle branches of q, and l = 0 quadrupole moments.
"""

__version__ = "0.1.0"

from .errors import (DomainError, HarmonicUndefinedError, NoRealRootsError,
                     QoscError, QuadratureError, RootOfUnityError)
from .qnum import (CasimirKind, QParam, Regime, bracket, casimir_eigenvalue,
                   gamma_q, lambda_q, q_factorial)
from .angular import (AngularFunction, QSphericalHarmonic, apply_casimir,
                      apply_j3, apply_jminus, apply_jplus, deformed_inner_product,
                      evaluate, gram_matrix, scale_operator, spherical_harmonic)
from .radial import (RadialState, RootBranch, alpha_roots, energy, laguerre,
                     radial_function, radial_r2_matrix_element, radial_state,
                     radial_wavefunction)
from .spectrum import (Figure, Level, energy_closed_form, energy_series,
                       enumerate_levels, figure_data)
from .observables import (IqMethod, QuadrupoleResult, iq_integral,
                          quadrupole_angular_closed, quadrupole_angular_quadrature,
                          quadrupole_moment, undeformed_quadrupole)
from .table import Table

"""
Spectral functions:
- cfun: c-functions by product formula and closed form, Plancherel densities
- hcseries: Harish-Chandra series Φ_λ and the spherical functions built from it
"""

from .cfun import SmallKType, c_function, closed_form_c, gk_product, mu_density, plancherel_density
from .hcseries import MultiplicityFunction, coeff_table, phi, upsilon_phi

__all__ = [
    'SmallKType',
    'c_function',
    'closed_form_c',
    'gk_product',
    'mu_density',
    'plancherel_density',
    'MultiplicityFunction',
    'coeff_table',
    'phi',
    'upsilon_phi',
]

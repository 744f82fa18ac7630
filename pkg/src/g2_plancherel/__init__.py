"""
Harish-Chandra c-functions, spherical transforms and Plancherel densities
for the small K-types of split G2.

Subpackages:
- roots: root data, Weyl groups and spectral points
- special: complex Gamma with pole bookkeeping
- spectral: c-functions and the Harish-Chandra series
- analysis: transforms, residues and the discrete-series check
- ingest: CSV loading and writing
- verify: the identity suite behind the ``verify`` command
"""

from .roots.rootsys import SpectralPoint, build_root_system, weyl_group
from .spectral.cfun import SmallKType, c_function, closed_form_c, gk_product, plancherel_density
from .spectral.hcseries import phi, upsilon_phi
from .analysis.transform import QuadratureSpec, arthur_inverse, forward_transform, inverse_continuous
from .analysis.plancherel import inverse_transform_full, residue_density_p
from .analysis.dschecker import no_discrete_series_check

__version__ = "0.1.0"

__all__ = [
    'SpectralPoint',
    'build_root_system',
    'weyl_group',
    'SmallKType',
    'c_function',
    'closed_form_c',
    'gk_product',
    'plancherel_density',
    'phi',
    'upsilon_phi',
    'QuadratureSpec',
    'forward_transform',
    'inverse_continuous',
    'arthur_inverse',
    'inverse_transform_full',
    'residue_density_p',
    'no_discrete_series_check',
]

"""Root data for G2, A1 and their doubled forms; Weyl groups and spectral points."""

from .rootsys import (
    Root,
    RootSystemData,
    SpectralPoint,
    WeylElement,
    WeylGroup,
    beta_sequence,
    build_root_system,
    doubled,
    weyl_group,
    weyl_positivity_set,
)

__all__ = [
    'Root',
    'RootSystemData',
    'SpectralPoint',
    'WeylElement',
    'WeylGroup',
    'beta_sequence',
    'build_root_system',
    'doubled',
    'weyl_group',
    'weyl_positivity_set',
]

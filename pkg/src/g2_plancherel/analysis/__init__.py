"""
Analysis layer:
- transform: spherical transform, inversion and shifted-contour inversion
- plancherel: singular lines, residues and the line density
- dschecker: exact discrete-series containment check for π₂
"""

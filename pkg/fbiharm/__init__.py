"""
fbiharm: numerical verification of f-biharmonic maps and hypersurfaces.

Jets carry exact Taylor expansions of maps, metrics and weights; every residual
the engine reports is computed from them, and a finite-difference oracle checks
the jets from the outside.
"""

__version__ = "0.1.0"

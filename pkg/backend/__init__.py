"""
Eta-product lacunarity toolkit - backend module.
Exact q-series, CM forms from Hecke characters, Hecke operators and the
lacunarity scan for eta(z)^2 eta(bz)^2.
"""

__version__ = "1.0.0"
__author__ = "Eta Lacunarity Toolkit Team"

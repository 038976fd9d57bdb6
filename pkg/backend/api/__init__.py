"""
Command-line front end and output models for the eta-product lacunarity toolkit
"""

__version__ = "1.0.0"

"""
Shipped fixtures (appendix tables and their checksum manifest) and command outputs.
"""

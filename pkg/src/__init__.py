"""
fracint: generalized fractional integrals, their classical special cases and
numerical checks of their identities.
"""

__version__ = "0.1.0"

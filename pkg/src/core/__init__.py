"""
Numerical core: special functions, quadrature, operator evaluation and analysis
"""

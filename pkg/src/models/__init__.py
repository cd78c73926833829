"""
Parameter, function and result types
"""

"""
Verification suites and output writers
"""

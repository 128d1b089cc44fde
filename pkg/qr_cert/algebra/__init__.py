"""
Exact polynomial arithmetic, resultants and real root isolation
"""

"""
Subset polynomials and the good / bad verdict pipeline
"""

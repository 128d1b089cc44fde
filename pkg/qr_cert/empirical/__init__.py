"""
Seeded random graphs and count experiments
"""

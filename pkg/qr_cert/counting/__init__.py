"""
Constrained subgraph counts
"""

"""
Pattern and host graphs, input formats
"""

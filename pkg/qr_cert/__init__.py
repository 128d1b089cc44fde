"""
qr_cert - exact certifier and experiment harness for quasi-random restricted subgraph counts
"""

__version__ = "0.1.0"
REPORT_SCHEMA_VERSION = "1"

"""
Exception hierarchy for qr_cert
"""
from typing import Optional


class QrCertError(Exception):
    """Base class for all errors raised by qr_cert"""


class GraphFormatError(QrCertError, ValueError):
    """Malformed graph6, edge-list or parts input"""

    def __init__(self, message: str, offset: Optional[int] = None):
        """
        Args:
            message: Human readable description
            offset: Byte offset (graph6) or 1-based line number (text formats)
        """
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class GraphStructureError(QrCertError, ValueError):
    """Input describes something that is not a simple graph or a valid partition"""


class VertexCapError(QrCertError, ValueError):
    """Pattern graph exceeds the configured vertex cap"""

    def __init__(self, n: int, cap: int, what: str = "subset enumeration"):
        self.n = n
        self.cap = cap
        super().__init__(f"pattern has {n} vertices; {what} is limited to {cap}")


class PolynomialError(QrCertError, ArithmeticError):
    """Invalid polynomial operation (zero divisor, zero input)"""


class ParameterError(QrCertError, ValueError):
    """Numeric parameter outside its documented range"""


class UsageError(QrCertError):
    """Command line misuse"""

"""
Bivariate integer polynomials in (u, v) and resultants with respect to v
"""
import logging
from functools import reduce
from math import factorial, gcd
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import PolynomialError
from .poly import UniPoly, prem

logger = logging.getLogger(__name__)


class BiPoly:
    """Polynomial in v whose coefficients are integer polynomials in u.

    ``coeffs[j]`` is the coefficient of v^j; the top coefficient is nonzero.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[UniPoly] = ()):
        items = [c if isinstance(c, UniPoly) else UniPoly.constant(c) for c in coeffs]
        while items and items[-1].is_zero():
            items.pop()
        for c in items:
            if not c.is_integral():
                raise PolynomialError("BiPoly coefficients must be integral")
        self.coeffs: Tuple[UniPoly, ...] = tuple(items)

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, int], int]) -> "BiPoly":
        """Build from ``{(i, j): c}`` meaning c * u^i * v^j"""
        if not terms:
            return cls()
        dv = max(j for _, j in terms)
        rows: List[Dict[int, int]] = [dict() for _ in range(dv + 1)]
        for (i, j), c in terms.items():
            rows[j][i] = rows[j].get(i, 0) + c
        out = []
        for row in rows:
            du = max(row, default=-1)
            out.append(UniPoly(row.get(i, 0) for i in range(du + 1)))
        return cls(out)

    @classmethod
    def u(cls) -> "BiPoly":
        return cls([UniPoly.x()])

    @classmethod
    def v(cls) -> "BiPoly":
        return cls([UniPoly(), UniPoly.constant(1)])

    def terms(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): c for j, row in enumerate(self.coeffs) for i, c in enumerate(row.coeffs) if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree_v(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree_u(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.terms()), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"BiPoly({self.terms()})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = UniPoly()
        return BiPoly(
            (self.coeffs[j] if j < len(self.coeffs) else zero) + (other.coeffs[j] if j < len(other.coeffs) else zero)
            for j in range(n)
        )

    def __neg__(self) -> "BiPoly":
        return BiPoly(-c for c in self.coeffs)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, int):
            return BiPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return BiPoly()
        out = [UniPoly() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BiPoly":
        result = BiPoly([UniPoly.constant(1)])
        for _ in range(exponent):
            result = result * self
        return result

    def at_u(self, u0: int) -> List[int]:
        """Specialise u = u0, giving integer coefficients in v (lowest first, formal length kept)"""
        return [c(u0) for c in self.coeffs]

    def evaluate(self, u, v):
        """Exact value at a point (ints or Fractions)"""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c(u)
        return acc

    def swap(self) -> "BiPoly":
        """Exchange the roles of u and v"""
        return BiPoly.from_terms({(j, i): c for (i, j), c in self.terms().items()})


def _content(coeffs: Sequence[int]) -> int:
    return reduce(gcd, coeffs, 0)


def _trim(coeffs: Sequence[int]) -> List[int]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """
    Resultant of two integer polynomials (lowest degree first)

    Subresultant pseudo-remainder sequence with exact divisions; the sign
    follows the Sylvester determinant convention.
    """
    A, B = _trim(a), _trim(b)
    if not A or not B:
        return 0
    da, db = len(A) - 1, len(B) - 1
    if da == 0:
        return A[0] ** db
    if db == 0:
        return B[0] ** da
    ca, cb = _content(A), _content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca ** db * cb ** da
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -1
    g = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = prem(A, B)
        A = B
        if not R:
            return 0
        divisor = g * h ** delta
        B = [c // divisor for c in R]
        g = A[-1]
        if delta:
            h = g ** delta // h ** (delta - 1)
        if len(B) == 1:
            break
    dA = len(A) - 1
    h = B[0] ** dA // h ** (dA - 1)
    return s * t * h


def resultant_formal(f: Sequence[int], p: int, g: Sequence[int], q: int) -> int:
    """
    Resultant of f, g viewed with formal degrees p, q

    Equals the Sylvester determinant of size p + q even when the leading
    coefficients vanish, so it commutes with specialisation of a parameter.
    """
    fa, ga = _trim(f), _trim(g)
    if not fa or not ga:
        return 0
    df, dg = len(fa) - 1, len(ga) - 1
    if df < p and dg < q:
        return 0
    base = resultant(fa, ga)
    if df < p:
        sign = -1 if (p - df) * q % 2 else 1
        return sign * ga[-1] ** (p - df) * base
    if dg < q:
        return fa[-1] ** (q - dg) * base
    return base


def resultant_degree_bound(f: BiPoly, g: BiPoly) -> int:
    """Upper bound for deg_u Res_v(f, g): the smaller of the bidegree and total degree bounds"""
    p, q = f.degree_v, g.degree_v
    bidegree = p * max(g.degree_u, 0) + q * max(f.degree_u, 0)
    total = f.total_degree * g.total_degree
    return max(min(bidegree, total), 0)


def _interpolate_integer_points(values: Sequence[int]) -> UniPoly:
    """Integer polynomial through (0, values[0]), ..., (D, values[D]) via forward differences"""
    row = list(values)
    newton = []
    for k in range(len(values)):
        lead = row[0]
        fk = factorial(k)
        if lead % fk:
            raise PolynomialError("interpolated resultant is not integral; degree bound violated")
        newton.append(lead // fk)
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    # Horner in the falling-factorial basis u(u-1)...(u-k+1)
    poly = [newton[-1]]
    for k in range(len(newton) - 2, -1, -1):
        shifted = [0] + poly
        for i, c in enumerate(poly):
            shifted[i] -= k * c
        shifted[0] += newton[k]
        poly = shifted
    return UniPoly(poly)


def resultant_v(f: BiPoly, g: BiPoly) -> UniPoly:
    """
    Resultant of f and g with respect to v, as a polynomial in u

    The resultant is evaluated exactly at u = 0..D (D a proven degree bound)
    and recovered by Newton interpolation; one further point is checked
    against the interpolant.

    Args:
        f, g: polynomials of positive degree in v

    Returns:
        Res_v(f, g) with the Sylvester determinant sign convention
    """
    if f.is_zero() or g.is_zero():
        raise PolynomialError("resultant of a zero polynomial")
    p, q = f.degree_v, g.degree_v
    if p < 1 or q < 1:
        raise PolynomialError("resultant_v needs positive degree in v for both inputs")
    bound = resultant_degree_bound(f, g)
    logger.info(f"Resultant in v: degrees ({p}, {q}), u-degree bound {bound}, {bound + 2} evaluation points")
    values = [resultant_formal(f.at_u(u0), p, g.at_u(u0), q) for u0 in range(bound + 1)]
    result = _interpolate_integer_points(values)
    check_point = bound + 1
    expected = resultant_formal(f.at_u(check_point), p, g.at_u(check_point), q)
    if result(check_point) != expected:
        raise PolynomialError("resultant interpolation check failed")
    logger.debug(f"Resultant degree {result.degree}")
    return result

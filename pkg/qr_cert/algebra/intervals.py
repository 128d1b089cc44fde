"""
Exact rational interval arithmetic for certified exclusion of zeros
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from ..errors import ParameterError
from .bipoly import BiPoly
from .roots import RootInterval

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints"""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ParameterError(f"interval endpoints out of order: [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Scalar) -> "Interval":
        return cls(Fraction(x), Fraction(x))

    @classmethod
    def of(cls, box: Union["Interval", RootInterval, Tuple[Scalar, Scalar]]) -> "Interval":
        if isinstance(box, Interval):
            return box
        if isinstance(box, RootInterval):
            return cls(box.lo, box.hi)
        lo, hi = box
        return cls(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def __add__(self, other: Union["Interval", Scalar]) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval.point(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: Union["Interval", Scalar]) -> "Interval":
        if not isinstance(other, Interval):
            other = Interval.point(other)
        return self + (-other)

    def __mul__(self, other: Union["Interval", Scalar]) -> "Interval":
        if not isinstance(other, Interval):
            c = Fraction(other)
            return Interval(self.lo * c, self.hi * c) if c >= 0 else Interval(self.hi * c, self.lo * c)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Interval":
        """Tight enclosure of {x^k : x in self}"""
        if k < 0:
            raise ParameterError("negative interval power")
        if k == 0:
            return Interval.point(1)
        a, b = self.lo ** k, self.hi ** k
        if k % 2 or self.lo >= 0:
            return Interval(min(a, b), max(a, b))
        if self.hi <= 0:
            return Interval(b, a)
        return Interval(Fraction(0), max(a, b))

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def interval_eval(f: BiPoly, u_box, v_box) -> Tuple[Fraction, Fraction]:
    """
    Certified enclosure of f(u, v) over a box

    Each monomial c*u^i*v^j is bounded by exact interval powers; the sum of
    the monomial enclosures contains every value of f on the box, so a result
    that excludes 0 proves f has no zero there.

    Args:
        f: integer polynomial in (u, v)
        u_box, v_box: Interval, RootInterval or (lo, hi) pairs

    Returns:
        (lo, hi) rational bounds
    """
    U, V = Interval.of(u_box), Interval.of(v_box)
    u_powers = [Interval.point(1)]
    for _ in range(max(f.degree_u, 0)):
        u_powers.append(U ** len(u_powers))
    total = Interval.point(0)
    for j, row in enumerate(f.coeffs):
        vj = V ** j
        for i, c in enumerate(row.coeffs):
            if c:
                total = total + (u_powers[i] * vj) * c
    return total.lo, total.hi


def excludes_zero(f: BiPoly, u_box, v_box) -> bool:
    lo, hi = interval_eval(f, u_box, v_box)
    return lo > 0 or hi < 0

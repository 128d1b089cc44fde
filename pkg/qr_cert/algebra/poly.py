"""
Exact dense univariate polynomials over the integers and rationals
"""
import logging
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Sequence, Tuple, Union

from ..errors import ParameterError, PolynomialError

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\s*$")


def parse_rational(value: Union[str, int, Fraction]) -> Fraction:
    """
    Parse ``"p/q"``, an integer or a decimal string into an exact Fraction

    Binary floats are rejected: ``Fraction("0.1")`` is exact, ``Fraction(0.1)`` is not.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ParameterError(f"refusing inexact value {value!r}; pass a string like '1/3' or '0.25'")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    text = str(value)
    match = _RATIONAL_RE.match(text)
    if match:
        num, den = int(match.group(1)), int(match.group(2))
        if den == 0:
            raise ParameterError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ParameterError(f"cannot parse {text!r} as a rational number")


def format_rational(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _normalize(value: Number) -> Number:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _strip(coeffs: List[Number]) -> List[Number]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class UniPoly:
    """Dense polynomial, coefficients lowest degree first.

    Coefficients are ``int`` when integral and ``Fraction`` otherwise; the
    zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs: Tuple[Number, ...] = tuple(_strip([_normalize(c) for c in coeffs]))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: Number) -> "UniPoly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1) -> "UniPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return self.format()

    def format(self, var: str = "x") -> str:
        """Human-readable form, highest power first"""
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c in (1, -1):
                text = ("-" if c == -1 else "") + mono
            else:
                text = format_rational(c) + ("*" + mono if mono else "")
            terms.append(text)
        return " + ".join(terms).replace("+ -", "- ")

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return NotImplemented

    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        return (-self) + other

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if exponent < 0:
            raise PolynomialError("negative polynomial power")
        result, base = UniPoly.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, x: Number) -> Number:
        """Exact Horner evaluation"""
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _normalize(acc)

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divrem(self, divisor: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        """Euclidean division over the rationals"""
        if divisor.is_zero():
            raise PolynomialError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        dd = divisor.degree
        lead = Fraction(divisor.leading)
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - 1 - dd, -1, -1):
            factor = rem[shift + dd] / lead
            if factor:
                quot[shift] = factor
                for i, c in enumerate(divisor.coeffs):
                    rem[shift + i] -= factor * c
        return UniPoly(quot), UniPoly(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divrem(divisor)[0]

    def __mod__(self, divisor: "UniPoly") -> "UniPoly":
        return self.divrem(divisor)[1]

    def shift(self, a: Number) -> "UniPoly":
        """p(x + a)"""
        coeffs = list(self.coeffs)
        n = len(coeffs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] += a * coeffs[j + 1]
        return UniPoly(coeffs)

    def scale(self, c: Number) -> "UniPoly":
        """p(c x)"""
        return UniPoly(coeff * c ** i for i, coeff in enumerate(self.coeffs))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        result = UniPoly()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def denominator(self) -> int:
        return reduce(lcm, (Fraction(c).denominator for c in self.coeffs), 1)

    def to_json(self) -> List[str]:
        """Coefficients as decimal (or p/q) strings, lowest degree first"""
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UniPoly":
        return cls(parse_rational(c) for c in data)


def content_primitive(p: UniPoly) -> Tuple[Number, UniPoly]:
    """
    Split p into (content, primitive part)

    The primitive part has coprime integer coefficients and a positive
    leading coefficient; content * primitive == p.
    """
    if p.is_zero():
        return 0, UniPoly()
    den = p.denominator()
    ints = [int(Fraction(c) * den) for c in p.coeffs]
    g = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    prim = UniPoly(c // g for c in ints)
    return _normalize(Fraction(g, den)), prim


def primitive(p: UniPoly) -> UniPoly:
    return content_primitive(p)[1]


def prem(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over the integers"""
    db = len(b) - 1
    if db < 0:
        raise PolynomialError("pseudo-division by the zero polynomial")
    rem = list(a)
    _strip(rem)
    lead = b[-1]
    steps = len(rem) - db
    if steps <= 0:
        return rem
    for _ in range(steps):
        if len(rem) - 1 < db:
            break
        top = rem[-1]
        shift = len(rem) - 1 - db
        rem = [c * lead for c in rem]
        for i, c in enumerate(b):
            rem[shift + i] -= top * c
        rem.pop()
        _strip(rem)
        steps -= 1
    if steps:
        factor = lead ** steps
        rem = [c * factor for c in rem]
    return rem


def _int_coeffs(p: UniPoly) -> List[int]:
    if not p.is_integral():
        p = primitive(p)
    return list(p.coeffs)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """
    Greatest common divisor, primitive with positive leading coefficient

    Uses the subresultant pseudo-remainder sequence, which keeps every
    division exact over the integers.
    """
    if a.is_zero():
        return primitive(b)
    if b.is_zero():
        return primitive(a)
    A, B = _int_coeffs(primitive(a)), _int_coeffs(primitive(b))
    if len(A) < len(B):
        A, B = B, A
    g = h = 1
    while True:
        delta = len(A) - len(B)
        R = prem(A, B)
        if not R:
            return primitive(UniPoly(B))
        if len(R) == 1:
            return UniPoly.constant(1)
        A = B
        divisor = g * h ** delta
        B = [c // divisor for c in R]
        g = A[-1]
        if delta:
            h = g ** delta // h ** (delta - 1)


def exact_quotient(a: UniPoly, b: UniPoly) -> UniPoly:
    """a / b when b divides a exactly; raises otherwise"""
    q, r = a.divrem(b)
    if not r.is_zero():
        raise PolynomialError(f"{b} does not divide {a}")
    return q


# Primes for the modular squarefree test; lc(p) must not vanish modulo the prime.
_SQUAREFREE_PRIMES = (2 ** 61 - 1, 2 ** 31 - 1, 1_000_000_007)


def _gcd_degree_mod(a: Sequence[int], b: Sequence[int], prime: int) -> int:
    """Degree of gcd(a, b) over GF(prime)"""
    A = _strip([c % prime for c in a])
    B = _strip([c % prime for c in b])
    while B:
        inv = pow(B[-1], -1, prime)
        while len(A) >= len(B):
            factor = A[-1] * inv % prime
            shift = len(A) - len(B)
            for i, c in enumerate(B):
                A[shift + i] = (A[shift + i] - factor * c) % prime
            _strip(A)
            if not A:
                break
        A, B = B, A
    return len(A) - 1


def is_squarefree(p: UniPoly) -> bool:
    """True when p has no repeated complex root; tries a modular proof before the exact gcd"""
    if p.is_zero():
        raise PolynomialError("squarefree test of the zero polynomial")
    if p.degree <= 1:
        return True
    P = list(primitive(p).coeffs)
    D = [i * c for i, c in enumerate(P) if i]
    for prime in _SQUAREFREE_PRIMES:
        if P[-1] % prime == 0:
            continue
        if _gcd_degree_mod(P, D, prime) == 0:
            return True
    logger.debug(f"Modular squarefree test inconclusive at degree {p.degree}; using the exact gcd")
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: UniPoly) -> UniPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient"""
    if p.is_zero():
        raise PolynomialError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly.constant(1)
    if is_squarefree(p):
        return primitive(p)
    g = poly_gcd(p, p.derivative())
    return primitive(exact_quotient(primitive(p), g))


def sign_at(coeffs: Sequence[int], x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, without building fractions"""
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(coeffs):
        acc = acc * num + c * dpow
        dpow *= den
    # acc = den^deg(p) * p(x) with den > 0
    return (acc > 0) - (acc < 0)


def _divide_linear(coeffs: Sequence[int], num: int, den: int) -> List[int]:
    """Integer quotient of p by (den*x - num), assuming the division is exact"""
    n = len(coeffs) - 1
    out = [0] * n
    carry = coeffs[n]
    for k in range(n, 0, -1):
        g = carry // den
        out[k - 1] = g
        carry = coeffs[k - 1] + num * g
    return out


def divide_out_root(p: UniPoly, root: Fraction) -> Tuple[UniPoly, int]:
    """Remove every factor (den*x - num) of p; returns the quotient and the multiplicity"""
    root = Fraction(root)
    num, den = root.numerator, root.denominator
    count = 0
    if p.is_integral():
        coeffs = list(p.coeffs)
        while len(coeffs) >= 2 and sign_at(coeffs, root) == 0:
            coeffs = _divide_linear(coeffs, num, den)
            count += 1
        return UniPoly(coeffs), count
    factor = UniPoly((-num, den))
    while not p.is_zero() and p.degree >= 1 and p(root) == 0:
        p = exact_quotient(p, factor)
        count += 1
    return p, count

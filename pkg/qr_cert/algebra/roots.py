"""
Real root counting, isolation and refinement with exact integer arithmetic
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Set, Tuple

from ..errors import ParameterError, PolynomialError
from .poly import UniPoly, divide_out_root, exact_quotient, prem, primitive, sign_at, squarefree_part

logger = logging.getLogger(__name__)

# Above this degree the Sturm chain is not built by default; see isolate_roots.
STURM_DEGREE_LIMIT = 80

Endpoint = Optional[Fraction]  # None stands for -inf (lower end) or +inf (upper end)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    count = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


class SturmChain:
    """Sturm sequence of p, stored as a scaled subresultant sequence.

    Each stored polynomial S_i equals c_i * T_i where T_i is the classical
    Sturm remainder; only sign(c_i) is kept. Exact divisions in the
    subresultant recurrence keep coefficient growth polynomial.
    """

    def __init__(self, p: UniPoly):
        if p.is_zero():
            raise PolynomialError("Sturm chain of the zero polynomial")
        P = list(primitive(p).coeffs)
        self.polys: List[List[int]] = [P]
        self.signs: List[int] = [1]
        if len(P) == 1:
            return
        D = list(primitive(UniPoly(P).derivative()).coeffs)
        self.polys.append(D)
        self.signs.append(1)
        A, B = P, D
        eps_a, eps_b = 1, 1
        g = h = 1
        while len(B) > 1:
            delta = len(A) - len(B)
            R = prem(A, B)
            if not R:
                break
            beta = g * h ** delta
            new = [c // beta for c in R]
            lead_sign = _sign(B[-1]) ** (delta + 1)
            eps_new = -lead_sign * eps_a * _sign(beta)
            self.polys.append(new)
            self.signs.append(eps_new)
            A, B = B, new
            eps_a, eps_b = eps_b, eps_new
            g = A[-1]
            if delta:
                h = g ** delta // h ** (delta - 1)
        logger.debug(f"Sturm chain of degree {len(P) - 1} has {len(self.polys)} members")

    def variations_at(self, x: Fraction) -> int:
        return _variations([eps * sign_at(S, x) for S, eps in zip(self.polys, self.signs)])

    def variations_at_infinity(self, positive: bool = True) -> int:
        signs = []
        for S, eps in zip(self.polys, self.signs):
            s = _sign(S[-1])
            if not positive and (len(S) - 1) % 2:
                s = -s
            signs.append(eps * s)
        return _variations(signs)

    def count(self, lo: Endpoint, hi: Endpoint) -> int:
        """Distinct roots in the open interval (lo, hi); finite endpoints must not be roots"""
        v_lo = self.variations_at_infinity(False) if lo is None else self.variations_at(lo)
        v_hi = self.variations_at_infinity(True) if hi is None else self.variations_at(hi)
        return v_lo - v_hi


def _check_interval(lo: Endpoint, hi: Endpoint):
    if lo is not None and hi is not None and lo >= hi:
        raise ParameterError(f"empty interval ({lo}, {hi})")


def _drop_endpoint_roots(p: UniPoly, lo: Endpoint, hi: Endpoint) -> UniPoly:
    for end in (lo, hi):
        if end is not None:
            p, mult = divide_out_root(p, Fraction(end))
            if mult:
                logger.debug(f"Divided out root {end} of multiplicity {mult}")
    return p


def sturm_count(p: UniPoly, lo: Endpoint = None, hi: Endpoint = None) -> int:
    """
    Number of distinct real roots of p in the open interval (lo, hi)

    Roots sitting exactly on a finite endpoint are divided out first. The
    chain ends in gcd(p, p'), so repeated roots are counted once.

    Args:
        p: nonzero polynomial
        lo: lower endpoint, None for -infinity
        hi: upper endpoint, None for +infinity
    """
    if p.is_zero():
        raise PolynomialError("sturm_count of the zero polynomial")
    _check_interval(lo, hi)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    p = _drop_endpoint_roots(p, lo, hi)
    if p.degree <= 0:
        return 0
    return SturmChain(p).count(lo, hi)


@dataclass(frozen=True)
class RootInterval:
    """Open interval (lo, hi) with rational ends holding exactly one real root.

    Neither end is a root of the polynomial the interval was built for.

    ``certificate`` names the rule that proved uniqueness ("sturm" or
    "descartes"); ``exact`` is set when the root is a known rational.
    """

    lo: Fraction
    hi: Fraction
    certificate: str = "descartes"
    exact: Optional[Fraction] = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi

    def approx(self) -> float:
        """Floating point value for display only"""
        return float(self.exact if self.exact is not None else self.midpoint)

    def to_json(self) -> dict:
        out = {"lo": _fmt(self.lo), "hi": _fmt(self.hi), "certificate": self.certificate, "approx": self.approx()}
        if self.exact is not None:
            out["exact"] = _fmt(self.exact)
        return out


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _taylor_shift_1(coeffs: Sequence[int]) -> List[int]:
    """c(x + 1) using additions only"""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1]
    return c


def _descartes_01(h: Sequence[int]) -> int:
    """Descartes bound for roots of h in (0, 1): variations of (x+1)^n h(1/(x+1))"""
    return _variations([_sign(c) for c in _taylor_shift_1(h[::-1])])


def _halve(h: Sequence[int]) -> List[int]:
    """2^n h(x/2), with common powers of two removed"""
    n = len(h) - 1
    out = [c << (n - i) for i, c in enumerate(h)]
    tz = min(((c & -c).bit_length() - 1 for c in out if c), default=0)
    return [c >> tz for c in out] if tz else out


def root_bound(p: UniPoly) -> Fraction:
    """Power of two strictly larger than the modulus of every complex root (Cauchy)"""
    q = primitive(p)
    lead = abs(q.leading)
    top = max((abs(c) for c in q.coeffs[:-1]), default=0)
    bound = 1 + Fraction(top, lead)
    ceiling = -(-bound.numerator // bound.denominator)
    return Fraction(1 << ceiling.bit_length())


def _to_unit_interval(p: UniPoly, a: Fraction, b: Fraction) -> List[int]:
    """Integer polynomial whose roots in (0, 1) correspond to roots of p in (a, b)"""
    q = p.shift(a) if a else p
    q = q.scale(b - a)
    return list(primitive(q).coeffs)


def descartes_count(p: UniPoly, lo: Fraction, hi: Fraction) -> int:
    """Descartes upper bound on the number of roots of p in (lo, hi); exact when 0 or 1"""
    return _descartes_01(_to_unit_interval(p, Fraction(lo), Fraction(hi)))


def _finite_bounds(p: UniPoly, lo: Endpoint, hi: Endpoint) -> Tuple[Fraction, Fraction]:
    if lo is None or hi is None:
        bound = root_bound(p)
        lo = -bound if lo is None else lo
        hi = bound if hi is None else hi
        if lo >= hi:
            # every root lies outside the requested ray
            return lo, lo
    return Fraction(lo), Fraction(hi)


def _isolate_exact_root(q: UniPoly, root: Fraction, radius: Fraction) -> RootInterval:
    """Shrink a symmetric interval around a rational root until it isolates it"""
    while True:
        lo, hi = root - radius, root + radius
        s_lo, s_hi = sign_at(q.coeffs, lo), sign_at(q.coeffs, hi)
        if s_lo and s_hi and s_lo != s_hi and descartes_count(q, lo, hi) == 1:
            return RootInterval(lo, hi, certificate="descartes", exact=root)
        radius /= 2


def _bisect_isolate(q: UniPoly, a: Fraction, b: Fraction) -> List[RootInterval]:
    """Descartes bisection of the squarefree polynomial q on (a, b)"""
    found: List[RootInterval] = []
    exact_roots: List[Tuple[Fraction, Fraction]] = []
    exact_set: Set[Fraction] = set()
    stack = [(_to_unit_interval(q, a, b), a, b)]
    nodes = 0
    while stack:
        h, lo, hi = stack.pop()
        nodes += 1
        if len(h) <= 1:
            continue
        v = _descartes_01(h)
        if v == 0:
            continue
        if v == 1 and lo not in exact_set and hi not in exact_set:
            found.append(RootInterval(lo, hi, certificate="descartes"))
            continue
        mid = (lo + hi) / 2
        left = _halve(h)
        if sum(left) == 0:
            # exact rational root at the midpoint
            exact_roots.append((mid, (hi - lo) / 4))
            exact_set.add(mid)
            h = list(exact_quotient(UniPoly(h), UniPoly((-1, 2))).coeffs)
            left = _halve(h)
        right = _taylor_shift_1(left)
        stack.append((right, mid, hi))
        stack.append((left, lo, mid))
    logger.debug(f"Descartes bisection on ({a}, {b}) visited {nodes} nodes")
    found.extend(_isolate_exact_root(q, root, radius) for root, radius in exact_roots)
    return found


def isolate_roots(
    p: UniPoly,
    lo: Endpoint = None,
    hi: Endpoint = None,
    sturm_degree_limit: int = STURM_DEGREE_LIMIT,
) -> List[RootInterval]:
    """
    Disjoint isolating intervals, one per distinct real root of p in (lo, hi)

    Intervals come from Descartes bisection on the squarefree part. When the
    squarefree part has degree at most ``sturm_degree_limit`` every interval
    is re-checked with a Sturm count of exactly one, and the total is checked
    against ``sturm_count``.

    Returns:
        intervals sorted by their lower end
    """
    if p.is_zero():
        raise PolynomialError("isolate_roots of the zero polynomial")
    _check_interval(lo, hi)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    q = _drop_endpoint_roots(p, lo, hi)
    if q.degree <= 0:
        return []
    q = squarefree_part(q)
    a, b = _finite_bounds(q, lo, hi)
    if a >= b:
        return []
    intervals = sorted(_bisect_isolate(q, a, b), key=lambda r: r.lo)
    # ends that are roots of p itself get pulled inside
    root_ends = {e for e in (lo, hi) if e is not None and p(e) == 0}
    if root_ends:
        intervals = [refine(r, p, r.width) if {r.lo, r.hi} & root_ends else r for r in intervals]
    if q.degree <= sturm_degree_limit:
        chain = SturmChain(q)
        checked = []
        for r in intervals:
            if chain.count(r.lo, r.hi) != 1:
                raise PolynomialError(f"Sturm check rejected isolating interval ({r.lo}, {r.hi})")
            checked.append(RootInterval(r.lo, r.hi, certificate="sturm", exact=r.exact))
        total = chain.count(lo, hi)
        if total != len(checked):
            raise PolynomialError(f"Sturm count {total} disagrees with {len(checked)} isolated roots")
        intervals = checked
    return intervals


def count_roots(p: UniPoly, lo: Endpoint = None, hi: Endpoint = None, sturm_degree_limit: int = STURM_DEGREE_LIMIT) -> int:
    """Exact number of distinct roots in (lo, hi), cross-checked by Sturm at low degree"""
    return len(isolate_roots(p, lo, hi, sturm_degree_limit))


def refine(r: RootInterval, p: UniPoly, width: Fraction) -> RootInterval:
    """
    Bisect an isolating interval until it is no wider than ``width``

    Signs are evaluated exactly on the squarefree part with any roots sitting
    on ``r.lo`` or ``r.hi`` divided out, so an interval that touches a root of
    p at an end is still accepted; the returned ends are never roots of p.
    An interval already narrow enough, with nonzero ends, is returned unchanged.
    """
    width = Fraction(width)
    if width <= 0:
        raise ParameterError("refinement width must be positive")
    full = list(squarefree_part(p).coeffs)

    def settled(lo: Fraction, hi: Fraction) -> bool:
        return hi - lo <= width and sign_at(full, lo) != 0 and sign_at(full, hi) != 0

    if settled(r.lo, r.hi):
        return r
    coeffs = full
    if p(r.lo) == 0 or p(r.hi) == 0:
        inner = _drop_endpoint_roots(p, r.lo, r.hi)
        if inner.degree <= 0:
            raise ParameterError("interval does not bracket a sign change of p")
        coeffs = list(squarefree_part(inner).coeffs)
    lo, hi = r.lo, r.hi
    if r.exact is not None:
        radius = min(width / 2, r.exact - lo, hi - r.exact)
        while True:
            a, b = r.exact - radius, r.exact + radius
            s_a, s_b = sign_at(coeffs, a), sign_at(coeffs, b)
            if s_a and s_b and s_a != s_b and sign_at(full, a) and sign_at(full, b):
                return RootInterval(a, b, r.certificate, r.exact)
            radius /= 2
    s_lo = sign_at(coeffs, lo)
    if s_lo == 0 or s_lo == sign_at(coeffs, hi):
        raise ParameterError("interval does not bracket a sign change of p")
    while not settled(lo, hi):
        mid = (lo + hi) / 2
        s_mid = sign_at(coeffs, mid)
        if s_mid == 0:
            return refine(RootInterval(lo, hi, r.certificate, mid), p, width)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi, r.certificate)

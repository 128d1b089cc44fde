"""
Subset polynomials of a pattern graph evaluated at a two-type triple (u, v, s)

For a graph F on m vertices the level sums

    L_k = sum over |A| = k of u^e(A) * v^e(A^c) * s^e(A, A^c)

are the Bernstein coefficients of Lambda(q) = sum_k L_k q^k (1-q)^(m-k), and
Lambda*(x) = sum_k L_k (x-1)^k. Everything is exact over the rationals.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

from ..algebra.bipoly import BiPoly
from ..algebra.poly import UniPoly, format_rational, parse_rational
from ..errors import ParameterError
from ..graphs.core import PATTERN_VERTEX_CAP, SmallGraph, subset_profile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WitnessTriple:
    """Values (u, v, s) of a two-type graphon: high block, low block, across"""

    u: Fraction
    v: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("u", "v", "s"):
            value = Fraction(getattr(self, name))
            if value < 0:
                raise ParameterError(f"witness entry {name} must be non-negative, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def parse(cls, text: str) -> "WitnessTriple":
        """Parse ``"u,v,s"`` with each entry a ``p/q`` or decimal string"""
        parts = text.split(",")
        if len(parts) != 3:
            raise ParameterError(f"expected three comma separated values, got {text!r}")
        return cls(*(parse_rational(p) for p in parts))

    def all_equal(self) -> bool:
        return self.u == self.v == self.s

    def in_unit_cube(self) -> bool:
        return all(0 <= x <= 1 for x in (self.u, self.v, self.s))

    def swapped(self) -> "WitnessTriple":
        """Exchange the high and low blocks"""
        return WitnessTriple(self.v, self.u, self.s)

    def to_json(self) -> dict:
        return {"u": format_rational(self.u), "v": format_rational(self.v), "s": format_rational(self.s)}


@dataclass(frozen=True)
class AffinePair:
    """Coefficients with L_k = C(m, k) * (a + b*k), equivalently Lambda(q) = a + b*m*q"""

    a: Fraction
    b: Fraction

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}


# Canonical Bad witness for graphs with one edge: s = (u + v) / 2 forces degree one.
SINGLE_EDGE_WITNESS = WitnessTriple(Fraction(3, 4), Fraction(1, 4), Fraction(1, 2))


def _powers(x: Fraction, top: int) -> List[Fraction]:
    out = [Fraction(1)]
    for _ in range(top):
        out.append(out[-1] * x)
    return out


def level_sums(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> List[Fraction]:
    """L_0, ..., L_m for the triple w"""
    profile = subset_profile(F, cap)
    e = profile.num_edges
    pu, pv, ps = _powers(w.u, e), _powers(w.v, e), _powers(w.s, e)
    sums = []
    for k in range(profile.m + 1):
        total = Fraction(0)
        for (e_in, e_comp, e_cross), count in profile.levels[k]:
            total += count * pu[e_in] * pv[e_comp] * ps[e_cross]
        sums.append(total)
    return sums


def bernstein_coefficients(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> List[Fraction]:
    """Coefficients of Lambda in the basis q^k (1-q)^(m-k); these are the level sums"""
    return level_sums(F, w, cap)


def _lambda_q_from_levels(levels: List[Fraction]) -> UniPoly:
    m = len(levels) - 1
    coeffs = [Fraction(0)] * (m + 1)
    for k, L in enumerate(levels):
        if not L:
            continue
        for j in range(m - k + 1):
            term = L * comb(m - k, j)
            coeffs[k + j] += -term if j % 2 else term
    return UniPoly(coeffs)


def lambda_q(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> UniPoly:
    """Lambda_{F;u,v,s}(q) in the power basis"""
    return _lambda_q_from_levels(level_sums(F, w, cap))


def lambda_x(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> UniPoly:
    """Lambda*_{F;u,v,s}(x) = sum_k L_k (x - 1)^k"""
    levels = level_sums(F, w, cap)
    shift = UniPoly((-1, 1))
    result = UniPoly()
    for L in reversed(levels):
        result = result * shift + L
    return result


def degree_le1_check(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> Optional[AffinePair]:
    """(a, b) with Lambda(q) = a + b*m*q when Lambda has degree at most one and is not zero"""
    poly = lambda_q(F, w, cap)
    if poly.is_zero() or poly.degree > 1:
        return None
    m = F.n
    a = Fraction(poly[0])
    b = Fraction(poly[1]) / m if m else Fraction(0)
    return AffinePair(a, b)


def check_alg_system(F: SmallGraph, w: WitnessTriple, cap: int = PATTERN_VERTEX_CAP) -> Optional[AffinePair]:
    """
    Solve the level equations L_k = C(m, k) * (a + b*k) for k = 0..m

    a and b are fixed by the two end equations (a = v^e, a + m*b = u^e); the
    pair is returned only if every other level agrees and (a, b) != (0, 0).
    """
    levels = level_sums(F, w, cap)
    m = F.n
    e = F.num_edges
    a = w.v ** e
    b = (w.u ** e - a) / m if m else Fraction(0)
    for k, L in enumerate(levels):
        if L != comb(m, k) * (a + b * k):
            logger.debug(f"Level equation k={k} fails for {w}")
            return None
    pair = AffinePair(Fraction(a), Fraction(b))
    if pair.is_zero():
        return None
    return pair


def degree_seq_equations(F: SmallGraph) -> Tuple[BiPoly, BiPoly]:
    """
    The two degree-sequence equations with s normalised to 1

    f1 = sum_i u^(e - d_i) - (m - 1) u^e - v^e
    f2 = sum_i v^(e - d_i) - u^e - (m - 1) v^e
    """
    e = F.num_edges
    if e == 0:
        raise ParameterError("degree-sequence equations need at least one edge")
    if min(F.degrees) == 0:
        raise ParameterError("degree-sequence equations need a graph without isolated vertices")
    m = F.n
    t1 = {}
    t2 = {}
    for d in F.degrees:
        t1[(e - d, 0)] = t1.get((e - d, 0), 0) + 1
        t2[(0, e - d)] = t2.get((0, e - d), 0) + 1
    t1[(e, 0)] = t1.get((e, 0), 0) - (m - 1)
    t1[(0, e)] = t1.get((0, e), 0) - 1
    t2[(e, 0)] = t2.get((e, 0), 0) - 1
    t2[(0, e)] = t2.get((0, e), 0) - (m - 1)
    f1 = BiPoly.from_terms({k: c for k, c in t1.items() if c})
    f2 = BiPoly.from_terms({k: c for k, c in t2.items() if c})
    return f1, f2

from fractions import Fraction

import pytest
import sympy

from qr_cert.algebra.poly import UniPoly
from qr_cert.algebra.roots import (
    RootInterval,
    SturmChain,
    count_roots,
    descartes_count,
    isolate_roots,
    refine,
    root_bound,
    sturm_count,
)
from qr_cert.errors import ParameterError, PolynomialError

x = sympy.symbols("x")


def _from_roots(*roots):
    p = UniPoly((1,))
    for r in roots:
        r = Fraction(r)
        p = p * UniPoly((-r.numerator, r.denominator))
    return p


def _sympy_count(p: UniPoly, lo, hi) -> int:
    expr = sum(int(c) * x ** i for i, c in enumerate(p.coeffs))
    roots = sympy.Poly(expr, x).real_roots()
    distinct = set(roots)
    return sum(1 for r in distinct if (lo is None or r > lo) and (hi is None or r < hi))


def test_sturm_count_simple():
    p = _from_roots(Fraction(1, 3), 2, -5)
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p) == 3
    assert sturm_count(p, 1, None) == 1
    assert sturm_count(p, None, 0) == 1


def test_sturm_counts_repeated_roots_once():
    p = _from_roots(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), 3)
    assert sturm_count(p, 0, 1) == 1
    assert sturm_count(p) == 2


def test_endpoint_roots_are_excluded():
    p = _from_roots(0, 1, Fraction(1, 2))
    assert sturm_count(p, 0, 1) == 1
    (r,) = isolate_roots(p, 0, 1)
    assert r.contains(Fraction(1, 2))
    assert p(r.lo) != 0 and p(r.hi) != 0


def test_no_real_roots():
    p = UniPoly((1, 0, 1))
    assert sturm_count(p) == 0
    assert isolate_roots(p) == []


def test_empty_interval_and_zero_polynomial():
    with pytest.raises(ParameterError):
        sturm_count(UniPoly((1, 1)), 1, 1)
    with pytest.raises(PolynomialError):
        SturmChain(UniPoly())


def test_counts_agree_with_sympy(rng):
    for _ in range(25):
        degree = rng.randint(1, 9)
        coeffs = [rng.randint(-20, 20) for _ in range(degree)] + [rng.choice([-1, 1, 2])]
        p = UniPoly(coeffs)
        for lo, hi in [(None, None), (Fraction(0), Fraction(1)), (Fraction(1), None), (None, Fraction(-1, 2))]:
            expected = _sympy_count(p, lo, hi)
            assert sturm_count(p, lo, hi) == expected
            assert count_roots(p, lo, hi) == expected
            assert count_roots(p, lo, hi, sturm_degree_limit=0) == expected


def test_isolating_intervals_are_disjoint_and_certified():
    p = _from_roots(Fraction(1, 7), Fraction(1, 5), Fraction(2, 3), Fraction(9, 10), 4)
    intervals = isolate_roots(p * UniPoly((3, 0, 1)), 0, None)
    assert len(intervals) == 5
    for a, b in zip(intervals, intervals[1:]):
        assert a.hi <= b.lo
    assert all(r.certificate == "sturm" for r in intervals)
    high = isolate_roots(p, 0, None, sturm_degree_limit=0)
    assert all(r.certificate == "descartes" for r in high)


def test_exact_rational_root_at_bisection_midpoint():
    # 1/2 is the first bisection point of (0, 1)
    p = _from_roots(Fraction(1, 2), Fraction(1, 4))
    intervals = isolate_roots(p, 0, 1)
    assert len(intervals) == 2
    assert any(r.exact == Fraction(1, 2) for r in intervals)
    for r in intervals:
        assert sturm_count(p, r.lo, r.hi) == 1


def test_root_bound_contains_all_roots():
    p = _from_roots(-37, 12, Fraction(1, 9))
    bound = root_bound(p)
    assert bound > 37
    assert bound.denominator == 1 and bound.numerator & (bound.numerator - 1) == 0


def test_descartes_count():
    p = _from_roots(Fraction(1, 3), Fraction(3, 4))
    assert descartes_count(p, 0, Fraction(1, 2)) == 1
    assert descartes_count(p, 1, 2) == 0


def test_refine_narrows_and_keeps_root():
    p = UniPoly((-2, 0, 1))
    (r,) = isolate_roots(p, 0, None)
    fine = refine(r, p, Fraction(1, 2 ** 40))
    assert fine.width <= Fraction(1, 2 ** 40)
    assert fine.lo ** 2 < 2 < fine.hi ** 2
    assert r.lo <= fine.lo and fine.hi <= r.hi


def test_refine_exact_root_stays_inside_interval():
    p = _from_roots(Fraction(1, 2), Fraction(1, 4))
    exact = next(r for r in isolate_roots(p, 0, 1) if r.exact == Fraction(1, 2))
    fine = refine(exact, p, Fraction(1, 2 ** 20))
    assert fine.contains(Fraction(1, 2))
    assert fine.width <= Fraction(1, 2 ** 20)
    assert exact.lo <= fine.lo and fine.hi <= exact.hi


def test_refine_rejects_non_bracketing_interval():
    p = _from_roots(Fraction(1, 2))
    with pytest.raises(ParameterError):
        refine(RootInterval(Fraction(2), Fraction(3)), p, Fraction(1, 8))


def test_root_interval_json():
    r = RootInterval(Fraction(1, 4), Fraction(1, 2), exact=Fraction(1, 3))
    data = r.to_json()
    assert data["lo"] == "1/4" and data["exact"] == "1/3"
    assert data["approx"] == pytest.approx(1 / 3)


def test_refine_accepts_interval_touching_a_root_of_p():
    p = UniPoly((0, -1, 0, 2))  # x (2x^2 - 1)
    (r,) = isolate_roots(p, 0, 1)
    assert r.lo > 0 and p(r.lo) != 0 and p(r.hi) != 0
    assert 2 * r.lo ** 2 < 1 < 2 * r.hi ** 2
    fine = refine(RootInterval(Fraction(0), Fraction(1)), p, Fraction(1, 10 ** 6))
    assert fine.width <= Fraction(1, 10 ** 6)
    assert 2 * fine.lo ** 2 < 1 < 2 * fine.hi ** 2
    assert p(fine.lo) != 0

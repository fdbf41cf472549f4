import numpy as np
import pytest

from conftest import GOLDEN_TERMS, integer_power_terms
from eotypes import (ConstraintError, GradedPoly, TClass, coeff_of, field_new,
                     monomial_basis, partial_derivative, poly_mul, poly_pow,
                     t_multiply)


def test_basis_fixtures():
    b1 = monomial_basis(3, 1)
    assert b1.monomials == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    b2 = monomial_basis(3, 2)
    assert b2.monomials == ((2, 0, 0), (1, 1, 0), (1, 0, 1),
                            (0, 2, 0), (0, 1, 1), (0, 0, 2))
    # plane-curve genus count: degree d-3 monomials for d = 4
    assert len(monomial_basis(3, 1)) == 3 == (4 - 1) * (4 - 2) // 2


def test_basis_counts():
    from math import comb
    for nvars in (1, 2, 3, 4):
        for degree in range(6):
            assert len(monomial_basis(nvars, degree)) == comb(degree + nvars - 1, nvars - 1)


def test_basis_errors():
    with pytest.raises(ConstraintError):
        monomial_basis(3, -1)


def test_poly_mul_fixtures(F5):
    x0 = GradedPoly.monomial(F5, 3, (1, 0, 0))
    x1 = GradedPoly.monomial(F5, 3, (0, 1, 0))
    assert poly_mul(x0, x1) == GradedPoly.monomial(F5, 3, (1, 1, 0))
    s = GradedPoly.from_terms(F5, 3, {(1, 0, 0): 1, (0, 1, 0): 1})
    d = GradedPoly.from_terms(F5, 3, {(1, 0, 0): 1, (0, 1, 0): -1})
    assert poly_mul(s, d) == GradedPoly.from_terms(F5, 3, {(2, 0, 0): 1, (0, 2, 0): -1})


def test_poly_mul_ctx_mismatch(F5, F7):
    a = GradedPoly.monomial(F5, 3, (1, 0, 0))
    b = GradedPoly.monomial(F7, 3, (1, 0, 0))
    with pytest.raises(ConstraintError):
        poly_mul(a, b)


def test_golden_power_against_integer_oracle(F5, golden_poly):
    f4 = poly_pow(golden_poly, 4)
    oracle = integer_power_terms(GOLDEN_TERMS, 4)
    # frozen values derived from the oracle
    assert oracle[(8, 4, 4)] == 90 and 90 % 5 == 0
    assert oracle[(3, 9, 4)] == 24 and 24 % 5 == 4
    assert coeff_of(f4, (8, 4, 4)).code == 0
    assert coeff_of(f4, (3, 9, 4)).code == 4
    for e, c in oracle.items():
        assert coeff_of(f4, e).code == c % 5
    # and the square-multiply split matches a plain product
    assert poly_mul(golden_poly, poly_pow(golden_poly, 3)) == f4


def test_poly_pow_basics(F5, golden_poly):
    one = poly_pow(golden_poly, 0)
    assert one.degree == 0 and one.coeffs.tolist() == [1]
    F2 = field_new(2)
    s = GradedPoly.from_terms(F2, 3, {(1, 0, 0): 1, (0, 1, 0): 1})
    assert poly_pow(s, 2) == GradedPoly.from_terms(F2, 3, {(2, 0, 0): 1, (0, 2, 0): 1})
    with pytest.raises(ConstraintError):
        poly_pow(golden_poly, -1)


def test_pow_additivity_random(F5):
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = GradedPoly(F5, 3, 2, rng.integers(0, 5, len(monomial_basis(3, 2))))
        assert poly_pow(a, 5) == poly_mul(poly_pow(a, 2), poly_pow(a, 3))


def test_freshman_dream_random():
    for p in (2, 3, 5):
        field = field_new(p)
        rng = np.random.default_rng(p)
        for _ in range(5):
            a = GradedPoly(field, 3, 2, rng.integers(0, p, 6))
            b = GradedPoly(field, 3, 2, rng.integers(0, p, 6))
            assert poly_pow(a + b, p) == poly_pow(a, p) + poly_pow(b, p)


def test_mul_commutative_associative_random(F5):
    rng = np.random.default_rng(17)
    for _ in range(10):
        a = GradedPoly(F5, 3, 2, rng.integers(0, 5, 6))
        b = GradedPoly(F5, 3, 1, rng.integers(0, 5, 3))
        c = GradedPoly(F5, 3, 3, rng.integers(0, 5, 10))
        assert poly_mul(a, b) == poly_mul(b, a)
        assert poly_mul(poly_mul(a, b), c) == poly_mul(a, poly_mul(b, c))


def test_derivative_fixtures(F5, golden_poly):
    q = GradedPoly.monomial(F5, 3, (4, 0, 0))
    assert partial_derivative(q, 0) == GradedPoly.from_terms(F5, 3, {(3, 0, 0): 4})
    q5 = GradedPoly.monomial(F5, 3, (5, 0, 0))
    assert partial_derivative(q5, 0).is_zero()
    expected = GradedPoly.from_terms(
        F5, 3, {(3, 0, 0): 1, (1, 1, 1): 2, (0, 3, 0): 4, (0, 1, 2): 3, (0, 0, 3): 3})
    assert partial_derivative(golden_poly, 1) == expected


def test_derivative_errors(F5, golden_poly):
    with pytest.raises(ConstraintError):
        partial_derivative(golden_poly, 3)
    with pytest.raises(ConstraintError):
        partial_derivative(poly_pow(golden_poly, 0), 0)


def test_derivative_of_zero_poly_is_closed(F5):
    z = GradedPoly.zero(F5, 3, 4)
    assert partial_derivative(z, 1).is_zero()


def test_coeff_of_errors(F5, golden_poly):
    with pytest.raises(ConstraintError):
        coeff_of(golden_poly, (1, 1, 1))
    assert coeff_of(golden_poly, (2, 2, 0)).code == 0  # absent monomial
    assert coeff_of(golden_poly, (-1, 4, 1)).code == 0  # negative exponent, right degree
    m = GradedPoly.monomial(F5, 3, (1, 1, 1))
    assert coeff_of(m, (1, 1, 1)).code == 1


def test_tclass_fixtures(F5):
    t = TClass.from_laurent_terms(F5, 3, {(-2, -1, -1): 1})
    x0 = GradedPoly.monomial(F5, 3, (1, 0, 0))
    x1 = GradedPoly.monomial(F5, 3, (0, 1, 0))
    assert t_multiply(x0, t) == TClass.from_laurent_terms(F5, 3, {(-1, -1, -1): 1})
    assert t_multiply(x1, t).is_zero()


def test_tclass_basis_counts():
    from math import comb
    for nvars in (3, 4):
        for m in range(-nvars, -nvars - 4, -1):
            assert TClass.basis_size(nvars, m) == comb(-m - 1, nvars - 1)
    # degenerate degrees give the zero space
    assert TClass.basis_size(3, -2) == 0


def test_tclass_rejects_nonnegative_exponent(F5):
    with pytest.raises(ConstraintError):
        TClass.from_laurent_terms(F5, 3, {(0, -2, -2): 1})


def test_module_action_random(F5):
    rng = np.random.default_rng(23)
    for _ in range(20):
        s1 = GradedPoly(F5, 3, 2, rng.integers(0, 5, 6))
        s2 = GradedPoly(F5, 3, 1, rng.integers(0, 5, 3))
        t = TClass(F5, 3, -9, rng.integers(0, 5, TClass.basis_size(3, -9)))
        assert t_multiply(poly_mul(s1, s2), t) == t_multiply(s1, t_multiply(s2, t))


def test_tclass_frobenius(F5):
    t = TClass.from_laurent_terms(F5, 3, {(-1, -1, -2): 2, (-2, -1, -1): 3})
    tf = t.frobenius()
    assert tf == TClass.from_laurent_terms(F5, 3, {(-5, -5, -10): 2, (-10, -5, -5): 3})


def test_extension_coefficient_multiplication(F4):
    # (t X0 + (t+1) X1)^2 = (t+1) X0^2 + t X1^2 over GF(4)
    poly = GradedPoly(F4, 3, 1, np.array([2, 3, 0]))
    sq = poly_mul(poly, poly)
    assert coeff_of(sq, (2, 0, 0)).code == 3
    assert coeff_of(sq, (0, 2, 0)).code == 2
    assert coeff_of(sq, (1, 1, 0)).code == 0


def test_t_multiply_extension_field(F4):
    gen = F4.element_from_code(2)  # the residue of the modulus variable
    tc = TClass.from_laurent_terms(F4, 3, {(-2, -1, -1): gen})
    x0 = GradedPoly(F4, 3, 1, np.array([3, 0, 0]))  # (t+1) X0
    out = t_multiply(x0, tc)
    # t*(t+1) = t^2 + t = 1
    assert out == TClass.from_laurent_terms(F4, 3, {(-1, -1, -1): 1})

import numpy as np
import pytest

from eotypes import CurveCI, GradedPoly, field_new, hw_triple

GOLDEN_TERMS = {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1, (3, 1, 0): 1,
                (1, 2, 1): 1, (0, 2, 2): -1, (0, 1, 3): 3}

# the worked fixture's relation-space generator, written as the degree-12
# polynomial that multiplies the inverse seventh power of X0*X1*X2
GOLDEN_U_SHIFTED = {
    (6, 6, 0): 3, (6, 5, 1): 4, (6, 4, 2): 4, (6, 3, 3): 1, (6, 2, 4): 2,
    (6, 1, 5): 2, (6, 0, 6): 3, (5, 6, 1): 4, (5, 2, 5): 4, (5, 1, 6): 2,
    (4, 6, 2): 2, (4, 5, 3): 2, (4, 4, 4): 4, (4, 2, 6): 3, (3, 5, 4): 3,
    (3, 4, 5): 2, (3, 3, 6): 1, (2, 6, 4): 4, (2, 5, 5): 1, (2, 4, 6): 2,
    (1, 6, 5): 2, (1, 5, 6): 1,
}

GOLDEN_HW = [[0, 4, 1], [0, 2, 3], [0, 2, 3]]
GOLDEN_KAPPA = [[1, 0, 0], [0, 1, 1]]
GOLDEN_PSI_COLS = [[3, 1, 3], [3, 3, 1]]
GOLDEN_AF = (np.array([[0, -1, 1], [0, -3, 3], [0, -3, 3],
                       [3, 1, 0], [1, 3, 0], [3, 3, 0]]) % 5).tolist()
GOLDEN_V = (np.array([[0, 0, 0, 0, 0, 0],
                      [0, 0, 0, 0, 0, 0],
                      [0, 0, 0, 0, 0, 0],
                      [0, 0, 0, 3, 3, 1],
                      [-3, -3, -1, -3, -3, -1],
                      [-3, -1, -3, 0, 0, 0]]) % 5).tolist()
GOLDEN_FINAL_TYPE = (0, 0, 1, 1, 2, 2, 3)
GOLDEN_WEYL = (1, 4, 2, 5, 3, 6)


@pytest.fixture(scope="session")
def F5():
    return field_new(5)


@pytest.fixture(scope="session")
def F7():
    return field_new(7)


@pytest.fixture(scope="session")
def F4():
    return field_new(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def F9():
    return field_new(3, 2)


@pytest.fixture(scope="session")
def golden_poly(F5):
    return GradedPoly.from_terms(F5, 3, GOLDEN_TERMS)


@pytest.fixture(scope="session")
def golden_curve(F5, golden_poly):
    return CurveCI(F5, [golden_poly])


@pytest.fixture(scope="session")
def golden_triple(golden_curve):
    return hw_triple(golden_curve)


@pytest.fixture(scope="session")
def fermat(F5, F7):
    def make(field, degree):
        return CurveCI(field, [GradedPoly.from_terms(
            field, 3, {(degree, 0, 0): 1, (0, degree, 0): 1, (0, 0, degree): 1})])
    return make


@pytest.fixture(scope="session")
def ci_23_curve(F5):
    """Smooth (2,3) complete intersection in P^3 over GF(5)."""
    f1 = GradedPoly.from_terms(F5, 4, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1,
                                       (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    f2 = GradedPoly.from_terms(F5, 4, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1,
                                       (0, 0, 3, 0): 1, (0, 0, 0, 3): 1})
    return CurveCI(F5, [f1, f2])


def integer_power_terms(terms: dict, k: int) -> dict:
    """Expand (sum of terms)^k over the integers; independent oracle for
    coefficient assertions."""
    cur = {(0,) * len(next(iter(terms))): 1}
    for _ in range(k):
        nxt = {}
        for e1, c1 in cur.items():
            for e2, c2 in terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, 0) + c1 * c2
        cur = nxt
    return cur

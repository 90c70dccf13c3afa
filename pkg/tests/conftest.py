import numpy as np
import pytest

import cases
from polyzeros import Polynomial, polynomial_matrix


@pytest.fixture
def double_quad_sextic():
    return Polynomial(cases.DOUBLE_QUAD_SEXTIC)


@pytest.fixture
def quad_quint():
    return Polynomial(cases.QUAD_QUINT)


@pytest.fixture
def cluster_decic():
    return Polynomial(cases.CLUSTER_DECIC)


@pytest.fixture
def quintic_15():
    return Polynomial(cases.QUINTIC_15)


@pytest.fixture
def wilkinson10():
    import oracles
    return Polynomial(tuple(float(c) for c in oracles.wilkinson_coeffs(10)))


@pytest.fixture
def sparse_penta():
    return polynomial_matrix(
        [cases.SPARSE_PENTA_A0, cases.SPARSE_PENTA_A1, cases.SPARSE_PENTA_A2]
    )


@pytest.fixture
def sparse_penta_char():
    return Polynomial(tuple(float(c) for c in cases.SPARSE_PENTA_CHAR))


@pytest.fixture
def pencil5():
    return polynomial_matrix([cases.PENCIL5_A, np.eye(5)])


@pytest.fixture
def singular_lead():
    return polynomial_matrix(list(cases.SINGULAR_LEAD_MATRICES))

import numpy as np
import pytest

from modlie.grading import cocharacter_grading, Cocharacter, regrade_by_table, REGRADING_TABLE, \
    build_V_decomposition
from modlie.liecore import subalgebra_closure
from modlie.pipeline import E_TERMS, F_TERMS, VerificationConfig, verify_theorem
from modlie.rootdata import build_root_datum, chevalley_structure_constants, reduce_mod_p


@pytest.fixture(scope="session")
def f4_datum():
    return build_root_datum("F4")


@pytest.fixture(scope="session")
def f4_basis(f4_datum):
    return chevalley_structure_constants(f4_datum)


@pytest.fixture(scope="session")
def g(f4_basis):
    return reduce_mod_p(f4_basis, 3)


@pytest.fixture(scope="session")
def e(g):
    return g.element(E_TERMS)


@pytest.fixture(scope="session")
def f(g):
    return g.element(F_TERMS)


@pytest.fixture(scope="session")
def f_prime(g):
    # relative sign resolved by the sign scan under this build's convention
    return g.element([(1, "f_1222"), (1, "f_1242")])


@pytest.fixture(scope="session")
def L(g, e, f):
    return subalgebra_closure(g, np.vstack([e, f]), name="L")


@pytest.fixture(scope="session")
def W(g, e, f_prime):
    return subalgebra_closure(g, np.vstack([e, f_prime]), name="W")


@pytest.fixture(scope="session")
def tau_grading(g, f4_datum):
    return cocharacter_grading(g, f4_datum, Cocharacter((2, 2, 0, 2)))


@pytest.fixture(scope="session")
def L_tau(tau_grading, L):
    return tau_grading.restrict(L.space)


@pytest.fixture(scope="session")
def vdec(g, L, W, e, L_tau):
    return build_V_decomposition(g, L, W, e, L_tau)


@pytest.fixture(scope="session")
def regraded(g, vdec, W, L_tau):
    return regrade_by_table(g, vdec.V, W.space, L_tau, REGRADING_TABLE)


@pytest.fixture(scope="session")
def default_report():
    return verify_theorem(VerificationConfig())

import cmath

import numpy as np
import pytest

from dilute import build_dtl_rep, FaceOperatorFamily


def spin1_braid(lam: float):
    """String block of a BWM braid on three colours (spin-1 quantum-group R-matrix).

    Built from the Casimir eigenprojectors of the two-fold tensor product;
    eigenvalues q^-1, -q, q^2 on total spin 2, 1, 0 with q = exp(-i lam), so
    omega = q^2. Used only as test input for the braid-dilution builder.
    """
    qs = cmath.exp(0.5j * lam)
    K = np.diag([qs ** 2, 1, qs ** -2]).astype(complex)
    Em = np.zeros((3, 3), complex)
    Em[0, 1] = Em[1, 2] = np.sqrt(qs + 1 / qs)
    Fm = Em.T.copy()
    I = np.eye(3)
    DE = np.kron(Em, K) + np.kron(I, Em)
    DF = np.kron(Fm, I) + np.kron(np.linalg.inv(K), Fm)
    DK = np.kron(K, K)
    C = DF @ DE + (qs * DK + np.linalg.inv(DK) / qs) / (qs - 1 / qs) ** 2
    w, V = np.linalg.eig(C)
    Vi = np.linalg.inv(V)

    def proj(j):
        cas = (qs ** (2 * j + 1) + qs ** (-2 * j - 1)) / (qs - 1 / qs) ** 2
        idx = np.isclose(w, cas)
        return V[:, idx] @ Vi[idx, :]

    B = qs ** 2 * proj(2) - qs ** -2 * proj(1) + qs ** -4 * proj(0)
    q = cmath.exp(-1j * lam)
    return B, q ** 2


def dtl_string_block(rep):
    m = rep.m
    idx = [a * (m + 1) + b for a in range(1, m + 1) for b in range(1, m + 1)]
    return rep.local("Braid")[np.ix_(idx, idx)], rep.local("E")[np.ix_(idx, idx)]


@pytest.fixture(scope="session")
def rep06():
    return build_dtl_rep(0.6, 4)


@pytest.fixture(scope="session")
def family06():
    return FaceOperatorFamily(build_dtl_rep(0.6, 4), "dtl")


@pytest.fixture
def rng():
    return np.random.default_rng(42)

import numpy as np
import pytest

from dilute import (
    FaceOperatorFamily, TransferSpec, build_dtl_rep, check_ybe, commutator_norm, r_matrix,
    spectrum, transfer_matrix,
)
from dilute.baxter import permutation
from dilute.errors import SizeTooLarge
from dilute.transfer import (
    sort_eigenvalues, spectrum_csv, symmetry_commutator, translation_operator,
)


@pytest.fixture(scope="module")
def fam():
    return FaceOperatorFamily(build_dtl_rep(0.6, 2), "dtl")


def _r13(M, d):
    I = np.eye(d)
    P23 = np.kron(I, permutation(d))
    return P23 @ np.kron(M, I) @ P23


def test_r_at_zero_is_perm(fam):
    assert np.array_equal(r_matrix(fam, 0.0), permutation(3))


def test_r_matrix_ybe_agrees_with_face_ybe(fam, rng):
    d, I = 3, np.eye(3)
    fam3 = FaceOperatorFamily(build_dtl_rep(0.6, 3), "dtl")
    bad = fam.with_params(sigma=1)
    for _ in range(3):
        u, v = rng.uniform(-0.8, 0.8, 2)
        for f in (fam, bad):
            R = lambda x: r_matrix(f, x)
            lhs = np.kron(R(u - v), I) @ _r13(R(u), d) @ np.kron(I, R(v))
            rhs = np.kron(I, R(v)) @ _r13(R(u), d) @ np.kron(R(u - v), I)
            r_ok = np.linalg.norm(lhs - rhs) / np.linalg.norm(lhs) < 1e-9
            face = FaceOperatorFamily(fam3.rep, "dtl", f.params)
            assert r_ok == (check_ybe(face, 1, u, v) < 1e-9)
            assert r_ok == (f is fam)


@pytest.mark.parametrize("L", [2, 3, 4])
def test_t_at_zero_is_translation(fam, L):
    T = transfer_matrix(TransferSpec(fam, L), 0.0)
    assert T.shape == (3 ** L, 3 ** L)
    assert np.array_equal(T, translation_operator(3, L))


def test_commutation(fam):
    spec = TransferSpec(fam, 4)
    assert commutator_norm(spec, 0.3, 0.3) == 0.0
    assert commutator_norm(spec, 0.15, 0.4) < 1e-9


def test_corrupted_cap_breaks_commutation():
    rep = build_dtl_rep(0.6, 2)
    bad = rep.replace(Cap=1.3 * rep.local("Cap"))
    spec = TransferSpec(FaceOperatorFamily(bad, "dtl"), 4)
    assert commutator_norm(spec, 0.15, 0.4) > 1e-3


def test_guard(fam):
    with pytest.raises(SizeTooLarge):
        TransferSpec(fam, 12)
    with pytest.raises(SizeTooLarge):
        TransferSpec(fam, 1)


def test_spectrum_at_zero_is_roots_of_unity(fam):
    L = 4
    eigs = spectrum(TransferSpec(fam, L), 0.0)
    assert len(eigs) == 81
    assert np.allclose(eigs ** L, 1)
    exact = sort_eigenvalues(np.linalg.eigvals(translation_operator(3, L)))
    assert np.allclose(np.sort_complex(np.round(eigs, 10)), np.sort_complex(np.round(exact, 10)))
    assert len(spectrum(TransferSpec(fam, L), 0.0, k=5)) == 5


def test_spectrum_invariant_under_relabelling(fam):
    spec = TransferSpec(fam, 3)
    T = transfer_matrix(spec, 0.22)
    perm = np.random.default_rng(1).permutation(27)
    P = np.eye(27)[perm]
    a = np.sort_complex(np.round(np.linalg.eigvals(T), 8))
    b = np.sort_complex(np.round(np.linalg.eigvals(P @ T @ P.T), 8))
    assert np.allclose(a, b, atol=1e-8)


def test_common_eigenvector(fam):
    spec = TransferSpec(fam, 3)
    Tu, Tv = transfer_matrix(spec, 0.2), transfer_matrix(spec, 0.45)
    w, V = np.linalg.eig(Tu)
    order = np.argsort(-np.abs(w))
    gap = abs(abs(w[order[0]]) - abs(w[order[1]]))
    assert gap > 1e-3  # non-degenerate top eigenvalue
    x = V[:, order[0]]
    y = Tv @ x
    # y must stay in span(x)
    resid = np.linalg.norm(y - (np.vdot(x, y) / np.vdot(x, x)) * x) / np.linalg.norm(y)
    assert resid < 1e-4


def test_local_hamiltonian_commutes(fam):
    # H = T(0)^-1 T'(0); derivative by Richardson extrapolation of central differences
    spec = TransferSpec(fam, 3)
    T0inv = np.linalg.inv(transfer_matrix(spec, 0.0))

    def central(h):
        return (transfer_matrix(spec, h) - transfer_matrix(spec, -h)) / (2 * h)

    h = 1e-2
    dT = (4 * central(h / 2) - central(h)) / 3
    H = T0inv @ dT
    Tv = transfer_matrix(spec, 0.37)
    assert np.linalg.norm(H @ Tv - Tv @ H) / np.linalg.norm(H) < 1e-7


def test_vacancy_number_reported(fam):
    val = symmetry_commutator(TransferSpec(fam, 3), 0.3)
    assert np.isfinite(val) and val >= 0


def test_csv(fam):
    spec = TransferSpec(fam, 2)
    text = spectrum_csv([(u, spectrum(spec, u)) for u in (0.0, 0.1)])
    lines = text.strip().split("\n")
    assert lines[0] == "u_re,u_im,idx,eig_re,eig_im"
    assert len(lines) == 1 + 2 * 9

import cmath
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dilute import (
    FaceOperatorFamily, build_dbwm_rep_from_braid, build_dtl_rep, check_inversion,
    check_locality, check_ybe, crossing_probe, derive_params, export_weights,
    face_operator_dbwm, face_operator_dtl, rho,
)
from dilute.baxter import VACANCY_SIGN, dumps_weights, grid_scan, permutation, support
from dilute.algebra import Kind
from dilute.errors import UnsupportedFlavor

from conftest import spin1_braid


@pytest.fixture(scope="module")
def fam3():
    return FaceOperatorFamily(build_dtl_rep(0.6, 3), "dtl")


def test_x_at_zero_is_identity(family06):
    assert np.allclose(family06.X(2, 0.0), np.eye(81))
    assert np.allclose(FaceOperatorFamily(family06.rep, "dbwm").X(1, 0.0), np.eye(81))


def test_x_at_crossing_point(family06):
    rep, p = family06.rep, family06.params
    expected = sum(rep.local(k) for k in ("E", "Cap", "Cup", "Pvv"))
    assert np.abs(family06.local(p.eta * p.lam) - expected).max() < 1e-14


def test_nineteen_nonzero_entries(family06):
    for u in np.linspace(0.05, 0.85, 9):
        assert len(support(family06.local(u))) == 19


def test_dbwm_form_on_dtl_rep(rng):
    for _ in range(10):
        lam = rng.uniform(0.2, 1.0)
        u = complex(rng.uniform(-1, 1), rng.uniform(-0.3, 0.3))
        rep = build_dtl_rep(lam, 3)
        assert np.abs(face_operator_dtl(rep, 1, u) - face_operator_dbwm(rep, 1, u)).max() < 1e-12


def test_string_block_in_span_of_braid(family06):
    rep = family06.rep
    fam = FaceOperatorFamily(rep, "dbwm")
    idx = [4, 5, 7, 8]
    block = fam.local(0.27)[np.ix_(idx, idx)]
    basis = [rep.local(k)[np.ix_(idx, idx)] for k in ("Pss", "Braid", "BraidInv")]
    A = np.stack([b.ravel() for b in basis], axis=1)
    coef, *_ = np.linalg.lstsq(A, block.ravel(), rcond=None)
    assert np.linalg.norm(A @ coef - block.ravel()) < 1e-12


def test_e_form_needs_dtl():
    B, omega = spin1_braid(0.6)
    rep = build_dbwm_rep_from_braid(0.6, omega, 1, B, n=3)
    with pytest.raises(UnsupportedFlavor):
        FaceOperatorFamily(rep, "dtl")
    with pytest.raises(ValueError):
        FaceOperatorFamily(rep, "other")


def test_ybe_examples(fam3):
    assert check_ybe(fam3, 1, 0.0, 0.4) < 1e-13
    assert check_ybe(fam3, 1, 0.2, 0.35) < 1e-9
    with pytest.raises(IndexError):
        check_ybe(fam3, 2, 0.1, 0.2)


def test_ybe_complex_points(family06, rng):
    for _ in range(5):
        u, v = rng.normal(size=2) + 1j * rng.normal(size=2) * 0.3
        assert check_ybe(family06, 2, u, v) < 1e-9


def test_ybe_where_both_sides_vanish(fam3):
    crossing = fam3.params.eta * fam3.params.lam
    assert check_ybe(fam3, 1, crossing, crossing) < 1e-9


def test_sigma_flip_breaks_ybe(fam3):
    assert fam3.with_params(sigma=1).params.sigma == 1
    assert check_ybe(fam3.with_params(sigma=1), 1, 0.2, 0.35) > 1e-3


def test_printed_vacancy_sign_breaks_ybe(fam3):
    # the flipped-sigma control is exactly the opposite sign convention
    assert VACANCY_SIGN == -1
    u = 0.31
    a = fam3.with_params(sigma=1).coefficients(u)
    b = fam3.coefficients(u)
    assert a[Kind.Pvv] - 1 == pytest.approx(-(b[Kind.Pvv] - 1))


@pytest.mark.parametrize("sigma", [1, -1])
def test_ybe_dbwm_spin1(sigma):
    B, omega = spin1_braid(0.6)
    rep = build_dbwm_rep_from_braid(0.6, omega, sigma, B, n=3)
    fam = FaceOperatorFamily(rep, "dbwm")
    for u, v in [(0.2, 0.35), (0.1 + 0.2j, -0.4), (0.5, 0.05)]:
        assert check_ybe(fam, 1, u, v) < 1e-9
        assert check_inversion(fam, 1, u) < 1e-10


def test_locality():
    fam = FaceOperatorFamily(build_dtl_rep(0.6, 5), "dtl")
    # equal up to summation order inside the Kronecker products
    assert check_locality(fam, 1, 3, 0.2, 0.5) < 1e-15
    assert check_locality(fam, 1, 4, 0.3 + 0.1j, -0.2) < 1e-15
    with pytest.raises(IndexError):
        check_locality(fam, 1, 2, 0.1, 0.1)


def test_rho_values(fam3):
    p = fam3.params
    assert rho(p, 0) == pytest.approx(1, abs=1e-13)
    assert abs(rho(p, p.lam)) < 1e-13
    assert abs(rho(p, p.eta * p.lam)) < 1e-13


def test_inversion(fam3, rng):
    assert check_inversion(fam3, 1, 0.0) < 1e-13
    assert check_inversion(fam3, 1, 0.25) < 1e-10
    prod = fam3.X(1, fam3.params.lam) @ fam3.X(1, -fam3.params.lam)
    assert np.abs(prod).max() < 1e-10
    for u in rng.uniform(-1, 1, 10):
        assert check_inversion(fam3, 2, u) < 1e-10


def test_grid_scan_deterministic(fam3):
    pts = [(1, u, v) for u in (0.1, 0.2, 0.3) for v in (0.0, 0.4)]
    a = grid_scan(lambda j, u, v: check_ybe(fam3, j, u, v), pts, jobs=1)
    b = grid_scan(lambda j, u, v: check_ybe(fam3, j, u, v), pts, jobs=3)
    assert a == b
    assert grid_scan(lambda: 0.0, [], 2) == ([], 0.0, None)


def test_crossing_probe(family06):
    p = family06.params
    half = crossing_probe(family06, p.eta * p.lam / 2)
    assert half["same_pattern"]
    assert half["unit_modulus"]
    assert len(half["matched"]) == 19
    again = crossing_probe(family06, p.eta * p.lam / 2)
    assert json.dumps(again, sort_keys=True) == json.dumps(half, sort_keys=True)
    # X(0) and X(eta*lam) have different supports; the quarter turn maps one
    # onto the other
    assert support(family06.local(0.0)) != support(family06.local(p.eta * p.lam))
    assert crossing_probe(family06, 0.0)["same_pattern"]


def test_crossing_probe_symmetric(family06):
    p = family06.params
    u = 0.17
    a = crossing_probe(family06, u)
    b = crossing_probe(family06, p.eta * p.lam - u)
    assert a["same_pattern"] and b["same_pattern"]
    assert a["matched"] == b["matched"]


def test_export_weights(family06):
    data = export_weights(family06, 0.2)
    assert len(data["entries"]) == 19
    assert dumps_weights(data) == dumps_weights(export_weights(family06, 0.2))
    rows = [tuple(e[:4]) for e in data["entries"]]
    order = [(c * 3 + d, a * 3 + b) for a, b, c, d in rows]
    assert order == sorted(order)

    ident = export_weights(family06, 0.0)
    assert all(e[:2] == e[2:4] and e[4:] == [1.0, 0.0] for e in ident["entries"])
    assert len(ident["entries"]) == 9
    perm = export_weights(family06, 0.0, form="r")
    assert all(e[:2] == [e[3], e[2]] for e in perm["entries"])
    with pytest.raises(ValueError):
        export_weights(family06, 0.0, form="x")


def test_permutation_matrix():
    P = permutation(3)
    assert np.allclose(P @ P, np.eye(9))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 1.5), st.floats(0.2, 3.0), st.sampled_from([1, -1]))
def test_twist_relation(lam, phase, sigma):
    omega = cmath.exp(1j * phase)
    try:
        p = derive_params("dbwm", lam, omega, sigma)
    except ValueError:
        return
    assert cmath.exp(-2j * p.eta * p.lam) == pytest.approx(sigma * omega, abs=1e-10)

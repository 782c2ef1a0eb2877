import json
import math

import numpy as np
import pytest

from dilute import (
    FaceOperatorFamily, Flavor, GeneratorSymbol, Kind, build_catalog, build_dbwm_rep_from_braid,
    build_dtl_rep, check_relations, embed, eval_element, ik_braid_limit,
)
from dilute.errors import CatalogViolation, CubicViolation, NotConverged, RankError
from dilute.vertex import (
    braid_from_json, braid_limit_experiment, braid_to_json, cubic_residual, factor_rank_one,
    monoid_from_braid,
)

from conftest import dtl_string_block, spin1_braid


def test_single_site_projectors(rep06):
    assert np.allclose(rep06.local("S"), np.diag([0, 1, 1]))
    assert np.allclose(rep06.local("V"), np.diag([1, 0, 0]))


def test_pair_projectors_are_tensor_products(rep06):
    s, v = rep06.local("S"), rep06.local("V")
    for kind, (a, b) in {"Pss": (s, s), "Psv": (s, v), "Pvs": (v, s), "Pvv": (v, v)}.items():
        assert np.allclose(rep06.local(kind), np.kron(a, b))


def test_external_leg_support(rep06):
    s, v = rep06.local("S"), rep06.local("V")
    P = {"s": s, "v": v}
    legs = {"Braid": ("ss", "ss"), "BraidInv": ("ss", "ss"), "E": ("ss", "ss"),
            "Cap": ("ss", "vv"), "Cup": ("vv", "ss"),
            "SlantF": ("sv", "vs"), "SlantB": ("vs", "sv")}
    for kind, (inp, out) in legs.items():
        M = rep06.local(kind)
        pin = np.kron(P[inp[0]], P[inp[1]])
        pout = np.kron(P[out[0]], P[out[1]])
        assert np.allclose(pout @ M @ pin, M), kind


def test_e_squared_and_rank(rep06):
    E = rep06.local("E")
    sq = rep06.params.sqrtQ
    assert sq == pytest.approx(-2 * math.cos(1.2), abs=1e-14)
    assert sq.real == pytest.approx(-0.7245, abs=3e-4)
    assert np.allclose(E @ E, sq * E)
    assert np.linalg.matrix_rank(E) == 1


@pytest.mark.parametrize("lam", [0.3, 0.6, math.pi / 5, 0.5 + 0.2j])
def test_dtl_catalog(lam):
    rep = build_dtl_rep(lam, 4)
    report = check_relations(rep, build_catalog(Flavor.dTL, 3), 1e-10)
    assert report.passed, report.failures


def test_embed_properties(rng):
    d = 3
    M = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    assert np.allclose(embed(np.eye(9), 2, 4, d), np.eye(81))
    assert np.allclose(embed(M, 1, 2, d), M)
    for n, j in [(3, 1), (3, 2), (4, 2)]:
        assert np.linalg.norm(embed(M, j, n, d)) == pytest.approx(
            d ** ((n - 2) / 2) * np.linalg.norm(M))
    with pytest.raises(IndexError):
        embed(M, 3, 3, d)


def test_dilution_roundtrip(rep06):
    B, E = dtl_string_block(rep06)
    p = rep06.params
    assert cubic_residual(B, p.q, p.omega) < 1e-12
    assert np.abs(monoid_from_braid(B, p.q, p.omega) - E).max() < 1e-12
    rebuilt = build_dbwm_rep_from_braid(0.6, p.omega, -1, B, n=4)
    assert rebuilt.report.passed
    assert np.abs(rebuilt.local("E") - rep06.local("E")).max() < 1e-12


def test_identity_braid_is_not_cubic():
    with pytest.raises(CubicViolation):
        build_dbwm_rep_from_braid(0.6, 2.0, 1, np.eye(4))


def test_rank_error():
    with pytest.raises(RankError):
        factor_rank_one(np.eye(3))
    c, ct, gauge = factor_rank_one(np.outer([0, 2, 1], [1, 1, 3]).astype(complex))
    assert c[1] == 1 and np.allclose(np.outer(c, ct), np.outer([0, 2, 1], [1, 1, 3]))


def test_strict_catalog_violation(rep06):
    # conjugation by a non-product diagonal keeps the cubic but breaks the
    # relations that involve two neighbouring pairs
    B, _ = dtl_string_block(rep06)
    p = rep06.params
    D = np.diag([1, 2, 1, 1]).astype(complex)
    Bc = D @ B @ np.linalg.inv(D)
    assert cubic_residual(Bc, p.q, p.omega) < 1e-12
    with pytest.raises(CatalogViolation) as info:
        build_dbwm_rep_from_braid(0.6, p.omega, -1, Bc, n=3)
    assert info.value.report is not None and info.value.report.failures
    rep = build_dbwm_rep_from_braid(0.6, p.omega, -1, Bc, n=3, strict=False)
    assert not rep.report.passed


@pytest.mark.parametrize("sigma", [1, -1])
def test_spin1_braid_dilutes(sigma):
    B, omega = spin1_braid(0.6)
    rep = build_dbwm_rep_from_braid(0.6, omega, sigma, B, n=3)
    assert rep.report.passed
    assert rep.local_dim == 4


def test_braid_file_roundtrip(tmp_path, rep06):
    B, _ = dtl_string_block(rep06)
    p = rep06.params
    path = tmp_path / "b.json"
    path.write_text(json.dumps(braid_to_json(B, p.q, p.omega, -1)))
    lam, omega, sigma, B2 = braid_from_json(json.loads(path.read_text()))
    assert lam == pytest.approx(0.6)
    assert omega == pytest.approx(p.omega) and sigma == -1
    assert np.allclose(B, B2)


def test_rep_json(rep06):
    data = rep06.to_json()
    assert data["m"] == 2 and set(data["generators"]) >= {"E", "Cap", "Cup"}


def test_braid_limit(family06):
    B, report = ik_braid_limit(family06, 30)
    assert report["relative_difference"] < 1e-8
    with pytest.raises(NotConverged):
        ik_braid_limit(family06, 0)


def test_braid_limit_experiment_recorded(family06):
    record = braid_limit_experiment(family06)
    assert record["success"] is False
    assert len(record["distinct_eigenvalues"]) > 3

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dilute import (
    AlgebraElement, Flavor, GeneratorSymbol, Kind, build_catalog, build_dtl_rep,
    check_relations, derive_params, eval_element,
)
from dilute.catalog import empty_catalog
from dilute.errors import DegenerateParams, SymbolOutOfRange
from dilute.laurent import LaurentPoly

g = AlgebraElement.gen


def test_symbol_ranges():
    GeneratorSymbol(Kind.E, 3).check_range(3)
    GeneratorSymbol(Kind.S, 4).check_range(3)
    with pytest.raises(IndexError):
        GeneratorSymbol(Kind.E, 4).check_range(3)
    with pytest.raises(ValueError):
        GeneratorSymbol(Kind.S, 0)
    with pytest.raises(ValueError):
        GeneratorSymbol(Kind.Id, 1)


def test_symbol_json_roundtrip():
    s = GeneratorSymbol(Kind.SlantF, 2)
    assert GeneratorSymbol.from_json(s.to_json()) == s


def test_canonical_form():
    e = g("E", 1) + g("E", 1) - 2 * g("E", 1)
    assert e.is_zero()
    assert AlgebraElement.gen("Id") == AlgebraElement.identity()
    assert (g("E", 1) * AlgebraElement.identity()) == g("E", 1)


def test_element_json_roundtrip():
    e = LaurentPoly.q(2) * g("Braid", 1) * g("E", 2) - g("Cap", 1)
    assert AlgebraElement.from_json(e.to_json()) == e


def test_dtl_params():
    p = derive_params("dtl", 0.6)
    q = cmath.exp(-0.6j)
    assert p.q == pytest.approx(q)
    assert p.omega == pytest.approx(-q**3)
    assert p.sigma == -1 and p.eta == 1.5
    assert p.sqrtQ == pytest.approx(-2 * math.cos(1.2))
    assert derive_params("dtl", math.pi / 5).sqrtQ.real == pytest.approx(-0.618034, abs=1e-6)


def test_dbwm_eta_from_twist():
    q = cmath.exp(-0.6j)
    p = derive_params("dbwm", 0.6, -q**3, -1)
    assert p.eta == pytest.approx(1.5)
    assert p.sqrtQ == pytest.approx(-(q**2 + q**-2))


@pytest.mark.parametrize("lam", [0.0, math.pi, 2 * math.pi / 3])
def test_degenerate_params(lam):
    with pytest.raises(DegenerateParams):
        derive_params("dtl", lam)


def test_dbwm_needs_twist():
    with pytest.raises(ValueError):
        derive_params("dbwm", 0.6)
    with pytest.raises(ValueError):
        derive_params("dtl", 0.6, omega=1.0, sigma=1)
    with pytest.raises(DegenerateParams):
        derive_params("dbwm", math.pi / 2, 2.0, 1)


def test_eval_basic(rep06):
    I = np.eye(rep06.dim)
    assert np.allclose(eval_element(rep06, AlgebraElement.identity()), I)
    assert np.allclose(eval_element(rep06, g("S", 1) + g("V", 1)), I)
    e = g("E", 1)
    sq = LaurentPoly.sqrtQ()
    assert np.linalg.norm(eval_element(rep06, e * e - sq * e)) < 1e-12


def test_operator_order(rep06):
    a, b = g("SlantF", 1), g("Cup", 1)
    M = eval_element(rep06, a * b)
    assert np.allclose(M, rep06.matrix(GeneratorSymbol(Kind.SlantF, 1))
                       @ rep06.matrix(GeneratorSymbol(Kind.Cup, 1)))


def test_check_relations_pass_and_fail(rep06):
    cat = build_catalog(Flavor.dTL, 3)
    assert check_relations(rep06, cat, 1e-10).passed
    bad = rep06.replace(Braid=np.eye(rep06.local_dim ** 2))
    report = check_relations(bad, cat, 1e-10)
    assert not report.passed
    assert any(n.startswith("braid_inverse") for n in report.failures)
    assert report.family_max["BraidMonoid"] > 1e-3


def test_check_relations_jobs_deterministic(rep06):
    cat = build_catalog(Flavor.dTL, 3)
    a = check_relations(rep06, cat, 1e-10, jobs=1)
    b = check_relations(rep06, cat, 1e-10, jobs=4)
    assert a.residuals == b.residuals


def test_empty_catalog_passes(rep06):
    r = check_relations(rep06, empty_catalog(Flavor.dTL), 1e-30)
    assert r.passed and r.residuals == {}


def test_too_few_sites():
    with pytest.raises(SymbolOutOfRange):
        check_relations(build_dtl_rep(0.6, 2), build_catalog(Flavor.dTL, 3), 1e-10)


kinds = st.sampled_from(["Pss", "Psv", "Pvs", "Pvv", "Braid", "BraidInv", "E",
                         "SlantF", "SlantB", "Cap", "Cup"])
elements = st.lists(st.tuples(kinds, st.integers(1, 2), st.integers(-3, 3)),
                    min_size=1, max_size=3).map(
    lambda xs: sum((LaurentPoly.q(p) * g(k, j) for k, j, p in xs), AlgebraElement.zero()))


@settings(max_examples=30, deadline=None)
@given(elements, elements, elements)
def test_eval_is_algebra_homomorphism(a, b, c):
    rep = build_dtl_rep(0.6, 3)
    E = lambda x: eval_element(rep, x)
    assert np.allclose(E(a + b), E(a) + E(b))
    assert np.allclose(E(a * b), E(a) @ E(b))
    assert np.allclose(E((a * b) * c), E(a * (b * c)))

"""Defining relations of the dilute braid-monoid algebra, instantiated per chain size.

Every relation is stored as ``lhs == rhs`` with exact Laurent coefficients.
Pair generators carry a pair index ``j`` in ``1..N``; single-site
projectors carry a site index in ``1..N+1``.

The dBWM quotient relations that involve ``1/(q - q^-1)`` are multiplied
through by ``q - q^-1`` so every coefficient stays polynomial.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .algebra import (
    BRAID_MONOID, DILUTE, PROJECTORS, AlgebraElement, Flavor, Kind,
)
from .laurent import LaurentPoly

g = AlgebraElement.gen

ONE = AlgebraElement.identity()
Q = LaurentPoly.q
OMEGA = LaurentPoly.omega
SQRTQ = LaurentPoly.sqrtQ()

# Relations whose slant orientation could not be read unambiguously off the
# printed diagrams. A failure here should first prompt swapping SlantF and
# SlantB before the representation is debugged.
ORIENTATION_SENSITIVE = frozenset({
    "slant_product_F_B", "slant_product_B_F",
    "slant_cup_transport", "slant_cap_transport",
    "slant_pair_F", "slant_pair_B",
})


class Family(str, enum.Enum):
    ProjectorAlg = "ProjectorAlg"
    Commutation = "Commutation"
    ExternalLegs = "ExternalLegs"
    BraidMonoid = "BraidMonoid"
    Dilute = "Dilute"
    Quotient = "Quotient"


@dataclass(frozen=True)
class Relation:
    name: str
    lhs: AlgebraElement
    rhs: AlgebraElement
    family: Family
    orientation_sensitive: bool = False

    def to_json(self) -> dict:
        return {"name": self.name, "family": self.family.value,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json()}

    @classmethod
    def from_json(cls, data) -> Relation:
        name = data["name"]
        base = name.split("[")[0]
        return cls(name, AlgebraElement.from_json(data["lhs"]),
                   AlgebraElement.from_json(data["rhs"]), Family(data["family"]),
                   base in ORIENTATION_SENSITIVE)


@dataclass(frozen=True)
class RelationCatalog:
    flavor: Flavor
    N: int
    relations: tuple[Relation, ...] = field(default_factory=tuple)

    def family(self, fam) -> list[Relation]:
        fam = Family(fam)
        return [r for r in self.relations if r.family is fam]

    def __getitem__(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.relations]

    def __len__(self):
        return len(self.relations)

    def map_coefficients(self, f) -> RelationCatalog:
        return RelationCatalog(self.flavor, self.N, tuple(
            Relation(r.name, r.lhs.map_coefficients(f), r.rhs.map_coefficients(f),
                     r.family, r.orientation_sensitive)
            for r in self.relations))

    def to_json(self) -> list:
        return [r.to_json() for r in self.relations]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data, flavor, N) -> RelationCatalog:
        return cls(Flavor.parse(flavor), N, tuple(Relation.from_json(d) for d in data))


class _Builder:
    def __init__(self):
        self.items: list[Relation] = []

    def add(self, family, name, lhs, rhs):
        base = name.split("[")[0]
        self.items.append(Relation(name, lhs, rhs, family, base in ORIENTATION_SENSITIVE))


def _projector_relations(b: _Builder, N: int) -> None:
    F = Family.ProjectorAlg
    sites = range(1, N + 2)
    for i in sites:
        s, v = g(Kind.S, i), g(Kind.V, i)
        b.add(F, f"s_plus_v[{i}]", s + v, ONE)
        b.add(F, f"s_idempotent[{i}]", s * s, s)
        b.add(F, f"v_idempotent[{i}]", v * v, v)
        b.add(F, f"s_v_orthogonal[{i}]", s * v, AlgebraElement.zero())
        b.add(F, f"v_s_orthogonal[{i}]", v * s, AlgebraElement.zero())
    for i in sites:
        for k in sites:
            if i < k:
                b.add(F, f"s_commute[{i},{k}]",
                      g(Kind.S, i) * g(Kind.S, k), g(Kind.S, k) * g(Kind.S, i))
    for j in range(1, N + 1):
        for kind, (a, c) in zip(PROJECTORS, ((Kind.S, Kind.S), (Kind.S, Kind.V),
                                             (Kind.V, Kind.S), (Kind.V, Kind.V))):
            b.add(F, f"pair_projector_{kind.value}[{j}]", g(kind, j), g(a, j) * g(c, j + 1))


def _commutation_relations(b: _Builder, N: int) -> None:
    F = Family.Commutation
    left = PROJECTORS + BRAID_MONOID + DILUTE
    right = BRAID_MONOID + DILUTE
    for j in range(1, N + 1):
        for k in range(1, N + 1):
            if abs(j - k) <= 1:
                continue
            for a in left:
                for c in right:
                    oj, ok = g(a, j), g(c, k)
                    b.add(F, f"far_commute_{a.value}_{c.value}[{j},{k}]", oj * ok, ok * oj)


def _external_leg_relations(b: _Builder, N: int) -> None:
    F = Family.ExternalLegs
    legs = {
        Kind.Braid: (Kind.Pss, Kind.Pss),
        Kind.BraidInv: (Kind.Pss, Kind.Pss),
        Kind.E: (Kind.Pss, Kind.Pss),
        Kind.SlantF: (Kind.Pvs, Kind.Psv),
        Kind.SlantB: (Kind.Psv, Kind.Pvs),
        Kind.Cap: (Kind.Pvv, Kind.Pss),
        Kind.Cup: (Kind.Pss, Kind.Pvv),
    }
    for j in range(1, N + 1):
        for kind, (out_p, in_p) in legs.items():
            o = g(kind, j)
            b.add(F, f"legs_{kind.value}[{j}]", g(out_p, j) * o * g(in_p, j), o)


def _braid_monoid_relations(b: _Builder, N: int) -> None:
    F = Family.BraidMonoid
    for j in range(1, N + 1):
        bj, bi, e, p = g(Kind.Braid, j), g(Kind.BraidInv, j), g(Kind.E, j), g(Kind.Pss, j)
        b.add(F, f"braid_inverse_right[{j}]", bj * bi, p)
        b.add(F, f"braid_inverse_left[{j}]", bi * bj, p)
        b.add(F, f"monoid_loop[{j}]", e * e, SQRTQ * e)
        b.add(F, f"twist_braid_left[{j}]", bj * e, OMEGA(1) * e)
        b.add(F, f"twist_braid_right[{j}]", e * bj, OMEGA(1) * e)
        b.add(F, f"twist_inverse_left[{j}]", bi * e, OMEGA(-1) * e)
        b.add(F, f"twist_inverse_right[{j}]", e * bi, OMEGA(-1) * e)
    for j in range(1, N + 1):
        for k in (j - 1, j + 1):
            if not 1 <= k <= N:
                continue
            ej, ek = g(Kind.E, j), g(Kind.E, k)
            bj, bk = g(Kind.Braid, j), g(Kind.Braid, k)
            ij, ik = g(Kind.BraidInv, j), g(Kind.BraidInv, k)
            b.add(F, f"monoid_straighten[{j},{k}]", ej * ek * ej, ej * g(Kind.Pss, k))
            b.add(F, f"braid_monoid_slide[{j},{k}]", bj * bk * ej, ek * ej)
            b.add(F, f"monoid_braid_slide[{j},{k}]", ej * bk * bj, ej * ek)
            b.add(F, f"inverse_monoid_slide[{j},{k}]", ij * ik * ej, ek * ej)
            b.add(F, f"monoid_inverse_slide[{j},{k}]", ej * ik * ij, ej * ek)
    for j in range(1, N):
        b1, b2 = g(Kind.Braid, j), g(Kind.Braid, j + 1)
        b.add(F, f"braid_yb[{j}]", b1 * b2 * b1, b2 * b1 * b2)


def _dilute_relations(b: _Builder, N: int) -> None:
    F = Family.Dilute
    for j in range(1, N + 1):
        sf, sb = g(Kind.SlantF, j), g(Kind.SlantB, j)
        cap, cup, e = g(Kind.Cap, j), g(Kind.Cup, j), g(Kind.E, j)
        b.add(F, f"slant_product_F_B[{j}]", sf * sb, g(Kind.Pvs, j))
        b.add(F, f"slant_product_B_F[{j}]", sb * sf, g(Kind.Psv, j))
        b.add(F, f"cap_monoid[{j}]", cap * e, SQRTQ * cap)
        b.add(F, f"monoid_cup[{j}]", e * cup, SQRTQ * cup)
        b.add(F, f"cap_cup_loop[{j}]", cap * cup, SQRTQ * g(Kind.Pvv, j))
        b.add(F, f"cup_cap_monoid[{j}]", cup * cap, e)
    for j in range(1, N):
        k = j + 1
        sfj, sfk = g(Kind.SlantF, j), g(Kind.SlantF, k)
        sbj, sbk = g(Kind.SlantB, j), g(Kind.SlantB, k)
        b.add(F, f"slant_cup_transport[{j}]",
              sfj * sfk * g(Kind.Cup, j), g(Kind.Pvs, j) * g(Kind.Cup, k))
        b.add(F, f"slant_cap_transport[{j}]",
              g(Kind.Cap, j) * sbk * sbj, g(Kind.Cap, k) * g(Kind.Pvs, j))
        b.add(F, f"slant_pair_F[{j}]", sfk * sfj, g(Kind.Cap, j) * g(Kind.Cup, k))
        b.add(F, f"slant_pair_B[{j}]", sbj * sbk, g(Kind.Cap, k) * g(Kind.Cup, j))
        b.add(F, f"slant_braid_transport[{j}]",
              sfj * sfk * g(Kind.Braid, j), g(Kind.Braid, k) * sfj * sfk)
        b.add(F, f"slant_inverse_transport[{j}]",
              sfj * sfk * g(Kind.BraidInv, j), g(Kind.BraidInv, k) * sfj * sfk)
        b.add(F, f"slant_braid_transport_B[{j}]",
              sbk * sbj * g(Kind.Braid, k), g(Kind.Braid, j) * sbk * sbj)


def _quotient_relations(b: _Builder, N: int, flavor: Flavor) -> None:
    F = Family.Quotient
    for j in range(1, N + 1):
        bj, bi, e, p = g(Kind.Braid, j), g(Kind.BraidInv, j), g(Kind.E, j), g(Kind.Pss, j)
        if flavor is Flavor.dTL:
            b.add(F, f"dtl_quadratic[{j}]",
                  (bj - Q(-1) * p) * (bj + Q(3) * p), AlgebraElement.zero())
            b.add(F, f"dtl_monoid_from_braid[{j}]", e, Q(-1) * (bj - Q(-1) * p))
        else:
            b.add(F, f"dbwm_cubic[{j}]",
                  (bj - Q(-1) * p) * (bj + Q(1) * p) * (bj - OMEGA(1) * p),
                  AlgebraElement.zero())
            qdiff = Q(1) - Q(-1)
            b.add(F, f"dbwm_monoid_from_braid[{j}]",
                  qdiff * OMEGA(1) * e, (bj - Q(-1) * p) * (bj + Q(1) * p))
            b.add(F, f"dbwm_monoid_from_inverse[{j}]", qdiff * e, qdiff * p + bj - bi)
            b.add(F, f"dbwm_loop_value[{j}]",
                  qdiff * SQRTQ * e, (qdiff + OMEGA(1) - OMEGA(-1)) * e)


def build_catalog(flavor, N: int) -> RelationCatalog:
    """All defining relations for pair indices ``1..N``.

    For dTL, omega and sqrtQ are eliminated in favour of q so the whole
    catalog is a set of identities with coefficients in ``Z[q, q^-1]``.
    """
    flavor = Flavor.parse(flavor)
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    b = _Builder()
    _projector_relations(b, N)
    _commutation_relations(b, N)
    _external_leg_relations(b, N)
    _braid_monoid_relations(b, N)
    _dilute_relations(b, N)
    _quotient_relations(b, N, flavor)
    cat = RelationCatalog(flavor, N, tuple(b.items))
    if flavor is Flavor.dTL:
        cat = cat.map_coefficients(LaurentPoly.specialize_dtl)
    return cat


def empty_catalog(flavor, N: int = 1) -> RelationCatalog:
    return RelationCatalog(Flavor.parse(flavor), N, ())

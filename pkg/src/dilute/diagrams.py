"""Planar diagram calculus for the dilute Temperley-Lieb quotient.

A diagram on ``n`` sites has ``n`` bottom points (input) and ``n`` top
points (output). Strings are arcs between points; a point not touched by
any arc is a vacancy. ``compose(a, b)`` stacks ``b`` below ``a`` (``b``
acts first), matching the operator order of :mod:`dilute.algebra`.

Coefficients are exact Laurent polynomials in q. Closed loops are
replaced by sqrtQ = -(q^2 + q^-2); braids are expanded as
``q^-1 * Pss + q * E``.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraElement, AlgebraParams, Flavor, GeneratorSymbol, Kind, Representation,
    derive_params,
)
from .errors import SizeMismatch, SizeTooLarge, UnsupportedFlavor
from .laurent import DTL_SQRTQ, LaurentPoly

MAX_BASIS_SITES = 6
MAX_REGULAR_SITES = 5

BOTTOM, TOP = "bottom", "top"


@dataclass(frozen=True, order=True)
class DiluteDiagram:
    """Planar partial matching. Points are encoded as integers: bottom
    position ``i`` (1-based) is ``i-1``, top position ``i`` is ``n+i-1``."""

    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arcs = tuple(sorted(tuple(sorted(a)) for a in self.arcs))
        used = [p for a in arcs for p in a]
        if len(used) != len(set(used)):
            raise ValueError("arcs share an endpoint")
        if any(not 0 <= p < 2 * self.n for p in used):
            raise ValueError("endpoint out of range")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_endpoints(cls, n: int, arcs) -> DiluteDiagram:
        def code(pt):
            edge, pos = pt
            if not 1 <= pos <= n:
                raise ValueError(f"position {pos} outside 1..{n}")
            return pos - 1 if edge == BOTTOM else n + pos - 1
        return cls(n, tuple((code(a), code(b)) for a, b in arcs))

    def endpoint(self, p: int) -> tuple[str, int]:
        return (BOTTOM, p + 1) if p < self.n else (TOP, p - self.n + 1)

    def bottom_pattern(self) -> tuple[bool, ...]:
        used = {p for a in self.arcs for p in a}
        return tuple(i in used for i in range(self.n))

    def top_pattern(self) -> tuple[bool, ...]:
        used = {p for a in self.arcs for p in a}
        return tuple(self.n + i in used for i in range(self.n))

    def is_planar(self) -> bool:
        return is_noncrossing([(_circle(self.n, a), _circle(self.n, b)) for a, b in self.arcs])

    def to_json(self) -> dict:
        return {"n": self.n,
                "arcs": [[list(self.endpoint(a)), list(self.endpoint(b))] for a, b in self.arcs]}

    @classmethod
    def from_json(cls, data) -> DiluteDiagram:
        return cls.from_endpoints(int(data["n"]),
                                  [((a[0], a[1]), (b[0], b[1])) for a, b in data["arcs"]])

    def __str__(self):
        def show(p):
            e, i = self.endpoint(p)
            return f"{e[0]}{i}"
        return "{" + ", ".join(f"{show(a)}-{show(b)}" for a, b in self.arcs) + "}"


def _circle(n: int, p: int) -> int:
    # bottom 1..n left to right, then top n..1 right to left
    return p if p < n else 3 * n - 1 - p


def is_noncrossing(pairs) -> bool:
    pairs = [tuple(sorted(p)) for p in pairs]
    for (a, b), (c, d) in itertools.combinations(pairs, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


@functools.lru_cache(maxsize=None)
def _compose_diagrams(d1: DiluteDiagram, d2: DiluteDiagram) -> tuple[DiluteDiagram | None, int]:
    """Stack ``d2`` below ``d1``. Returns ``(diagram, closed_loops)`` or
    ``(None, 0)`` when a string meets a vacancy."""
    n = d1.n
    if d2.top_pattern() != d1.bottom_pattern():
        return None, 0
    # nodes: ("B", i) result bottom, ("T", i) result top, ("M", i) glued middle
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}

    def node(d_is_lower: bool, p: int):
        if p < n:
            return ("B", p) if d_is_lower else ("M", p)
        return ("M", p - n) if d_is_lower else ("T", p - n)

    for lower, d in ((True, d2), (False, d1)):
        for a, b in d.arcs:
            x, y = node(lower, a), node(lower, b)
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)

    seen = set()
    arcs = []
    for start in sorted(k for k in adj if k[0] != "M"):
        if start in seen:
            continue
        prev, cur = start, adj[start][0]
        seen.update((start, cur))
        while cur[0] == "M":
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
            seen.add(cur)
        arcs.append((start, cur))
    # whatever is left lives on closed loops; count connected components
    loops = 0
    for k in adj:
        if k in seen:
            continue
        loops += 1
        stack = [k]
        while stack:
            x = stack.pop()
            if x not in seen:
                seen.add(x)
                stack.extend(adj[x])

    def code(x):
        return x[1] if x[0] == "B" else n + x[1]

    return DiluteDiagram(n, tuple((code(a), code(b)) for a, b in arcs)), loops


class DiagramElement:
    """Exact linear combination of diagrams of a common size."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        clean: dict[DiluteDiagram, LaurentPoly] = {}
        for d, c in (terms or {}).items():
            if d.n != n:
                raise SizeMismatch(f"diagram on {d.n} sites in element of size {n}")
            c = clean.get(d, LaurentPoly()) + LaurentPoly.coerce(c)
            if c.is_zero():
                clean.pop(d, None)
            else:
                clean[d] = c
        self._terms = clean

    @classmethod
    def single(cls, d: DiluteDiagram, coeff=1) -> DiagramElement:
        return cls(d.n, {d: coeff})

    @property
    def terms(self) -> dict[DiluteDiagram, LaurentPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _check(self, other):
        if not isinstance(other, DiagramElement):
            raise TypeError("expected a DiagramElement")
        if other.n != self.n:
            raise SizeMismatch(f"sizes {self.n} and {other.n} differ")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, LaurentPoly()) + c
        return DiagramElement(self.n, out)

    def __neg__(self):
        return DiagramElement(self.n, {d: -c for d, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> DiagramElement:
        return DiagramElement(self.n, {d: v * c for d, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiagramElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def to_json(self) -> list:
        return [{"diagram": d.to_json(), "coeff": c.to_json()}
                for d, c in sorted(self._terms.items())]

    def __repr__(self):
        if not self._terms:
            return "DiagramElement(0)"
        return "DiagramElement(" + " + ".join(
            f"({c}){d}" for d, c in sorted(self._terms.items())) + ")"


def compose(d1: DiagramElement, d2: DiagramElement) -> DiagramElement:
    """Product ``d1 * d2`` (``d2`` acts first), bilinearly extended."""
    if d1.n != d2.n:
        raise SizeMismatch(f"cannot compose sizes {d1.n} and {d2.n}")
    out: dict[DiluteDiagram, LaurentPoly] = {}
    for a, ca in d1._terms.items():
        for b, cb in d2._terms.items():
            d, loops = _compose_diagrams(a, b)
            if d is None:
                continue
            c = ca * cb * DTL_SQRTQ ** loops
            out[d] = out.get(d, LaurentPoly()) + c
    return DiagramElement(d1.n, out)


# ---------------------------------------------------------------------------
# generators


def _through(n: int, i: int) -> tuple[int, int]:
    return (i, n + i)


def _fill_others(n: int, fixed: set[int], local_arcs, coeff) -> dict:
    """Sum over through-string / vacancy choices on every site not in ``fixed``."""
    others = [i for i in range(n) if i not in fixed]
    out = {}
    for choice in itertools.product((False, True), repeat=len(others)):
        arcs = list(local_arcs) + [_through(n, i) for i, on in zip(others, choice) if on]
        out[DiluteDiagram(n, tuple(arcs))] = coeff
    return out


def identity_element(n: int) -> DiagramElement:
    return DiagramElement(n, _fill_others(n, set(), (), 1))


def _local_arcs(kind: Kind, n: int, j: int):
    b0, b1, t0, t1 = j, j + 1, n + j, n + j + 1
    return {
        Kind.Pss: [(b0, t0), (b1, t1)],
        Kind.Psv: [(b0, t0)],
        Kind.Pvs: [(b1, t1)],
        Kind.Pvv: [],
        Kind.E: [(b0, b1), (t0, t1)],
        Kind.Cap: [(b0, b1)],
        Kind.Cup: [(t0, t1)],
        Kind.SlantF: [(b0, t1)],
        Kind.SlantB: [(b1, t0)],
    }[kind]


def generator_diagram(symbol: GeneratorSymbol, n: int, flavor=Flavor.dTL) -> DiagramElement:
    if Flavor.parse(flavor) is not Flavor.dTL:
        raise UnsupportedFlavor("the planar diagram basis only covers the dTL quotient")
    kind = symbol.kind
    if kind is Kind.Id:
        return identity_element(n)
    symbol.check_range(n - 1)
    if kind in (Kind.S, Kind.V):
        i = symbol.site - 1
        local = [_through(n, i)] if kind is Kind.S else []
        return DiagramElement(n, _fill_others(n, {i}, local, 1))
    j = symbol.site - 1
    if kind in (Kind.Braid, Kind.BraidInv):
        k = -1 if kind is Kind.Braid else 1
        pss = generator_diagram(GeneratorSymbol(Kind.Pss, symbol.site), n)
        e = generator_diagram(GeneratorSymbol(Kind.E, symbol.site), n)
        return pss.scale(LaurentPoly.q(k)) + e.scale(LaurentPoly.q(-k))
    return DiagramElement(n, _fill_others(n, {j, j + 1}, _local_arcs(kind, n, j), 1))


def element_to_diagrams(element: AlgebraElement, n: int) -> DiagramElement:
    """Evaluate a formal algebra element in the diagram algebra on ``n`` sites."""
    out = DiagramElement(n)
    for coeff, word in element.terms:
        coeff = coeff.specialize_dtl()
        acc = identity_element(n)
        for sym in reversed(word):
            acc = compose(generator_diagram(sym, n), acc)
        out = out + acc.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# basis enumeration


def _check_basis_size(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n > MAX_BASIS_SITES:
        raise SizeTooLarge(f"basis enumeration limited to n <= {MAX_BASIS_SITES}")


def _noncrossing_matchings(points: tuple[int, ...]):
    """Recursive arc insertion: the first point is either left unmatched or
    joined to a later point, splitting the rest into inside and outside."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for m in _noncrossing_matchings(rest):
        yield m
    for k in range(len(rest)):
        inside, outside = rest[:k], rest[k + 1:]
        for mi in _noncrossing_matchings(inside):
            for mo in _noncrossing_matchings(outside):
                yield ((first, rest[k]),) + mi + mo


def _all_partial_matchings(points: tuple[int, ...]):
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    yield from _all_partial_matchings(rest)
    for k in range(len(rest)):
        remaining = rest[:k] + rest[k + 1:]
        for m in _all_partial_matchings(remaining):
            yield ((first, rest[k]),) + m


def _from_circle(n: int, matching) -> DiluteDiagram:
    inv = {_circle(n, p): p for p in range(2 * n)}
    return DiluteDiagram(n, tuple((inv[a], inv[b]) for a, b in matching))


def enumerate_basis(n: int, method: str = "insertion") -> list[DiluteDiagram]:
    """All planar partial matchings on ``n`` top and ``n`` bottom points.

    ``method`` is ``"insertion"`` (recursive arc insertion) or ``"filter"``
    (every partial matching, kept when non-crossing). The result is sorted.
    """
    _check_basis_size(n)
    pts = tuple(range(2 * n))
    if method == "insertion":
        found = [_from_circle(n, m) for m in _noncrossing_matchings(pts)]
    elif method == "filter":
        found = [_from_circle(n, m) for m in _all_partial_matchings(pts) if is_noncrossing(m)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return sorted(found)


# ---------------------------------------------------------------------------
# exact catalog check


@dataclass
class ExactReport:
    checked: int = 0
    differences: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.differences

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "differences": self.differences}


def relation_difference(rel, n: int) -> DiagramElement:
    """``rhs - lhs`` as an exact diagram element."""
    return element_to_diagrams(rel.rhs, n) - element_to_diagrams(rel.lhs, n)


def check_catalog_exact(catalog) -> ExactReport:
    """Verify every relation of a dTL catalog as an identity of diagram elements."""
    if catalog.flavor is not Flavor.dTL:
        raise UnsupportedFlavor("exact diagram checks exist only for dTL")
    n = catalog.N + 1
    if catalog.relations:
        _check_basis_size(n)
    report = ExactReport()
    for rel in catalog.relations:
        diff = relation_difference(rel, n)
        report.checked += 1
        if not diff.is_zero():
            report.differences[rel.name] = repr(diff)
    return report


# ---------------------------------------------------------------------------
# regular representation


class RegularRep(Representation):
    """Left multiplication on the diagram basis, coefficients evaluated at q."""

    def __init__(self, n: int, q: complex):
        if n > MAX_REGULAR_SITES:
            raise SizeTooLarge(f"regular representation limited to n <= {MAX_REGULAR_SITES}")
        q = complex(q)
        lam = 1j * np.log(q)
        self.n_sites = n
        self.basis = enumerate_basis(n)
        self.index = {d: k for k, d in enumerate(self.basis)}
        self.dim = len(self.basis)
        params = derive_params(Flavor.dTL, lam)
        # pin q exactly as given; the log round trip may perturb it
        self.params: AlgebraParams = dataclasses.replace(
            params, q=q, omega=-q**3, sqrtQ=-(q**2 + q**-2))

    def _matrix(self, symbol: GeneratorSymbol) -> np.ndarray:
        gen = generator_diagram(symbol, self.n_sites)
        mat = np.zeros((self.dim, self.dim), dtype=complex)
        q = self.params.q
        for k, d in enumerate(self.basis):
            for out, c in compose(gen, DiagramElement.single(d))._terms.items():
                mat[self.index[out], k] += c.evaluate(q)
        return mat


def regular_representation(n: int, q: complex) -> RegularRep:
    return RegularRep(n, q)


def dumps_diagram(d: DiluteDiagram) -> str:
    return json.dumps(d.to_json())

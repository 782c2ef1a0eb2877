"""Generators, formal algebra elements, parameters and the generic relation checker.

Products are written in operator order: ``A * B`` means *apply B first*.
A word ``(w0, w1, ..., wk)`` is evaluated as the matrix product
``M(w0) @ M(w1) @ ... @ M(wk)``. :data:`OPERATOR_ORDER` flips this in one
place should a diagram-versus-matrix comparison ever require the other
stacking order.
"""
from __future__ import annotations

import cmath
import enum

import numbers
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import DegenerateParams, SymbolOutOfRange, UnsupportedFlavor
from .laurent import LaurentPoly

OPERATOR_ORDER = True

DEGENERACY_TOL = 1e-12


class Kind(str, enum.Enum):
    Id = "Id"
    Pss = "Pss"
    Psv = "Psv"
    Pvs = "Pvs"
    Pvv = "Pvv"
    S = "S"
    V = "V"
    Braid = "Braid"
    BraidInv = "BraidInv"
    E = "E"
    SlantF = "SlantF"
    SlantB = "SlantB"
    Cap = "Cap"
    Cup = "Cup"

    def __str__(self):
        return self.value


PROJECTORS = (Kind.Pss, Kind.Psv, Kind.Pvs, Kind.Pvv)
BRAID_MONOID = (Kind.Braid, Kind.BraidInv, Kind.E)
DILUTE = (Kind.SlantF, Kind.SlantB, Kind.Cap, Kind.Cup)
SINGLE_SITE = (Kind.S, Kind.V)
PAIR_KINDS = PROJECTORS + BRAID_MONOID + DILUTE


class Flavor(str, enum.Enum):
    dTL = "dTL"
    dBWM = "dBWM"

    @classmethod
    def parse(cls, value) -> Flavor:
        if isinstance(value, Flavor):
            return value
        for f in cls:
            if f.value.lower() == str(value).lower():
                return f
        raise UnsupportedFlavor(f"unknown flavor {value!r}")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """One generator. ``site`` is a pair index j (acting on j, j+1) for
    pair generators and a single-site index for S and V."""

    kind: Kind
    site: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.Id:
            if self.site is not None:
                raise ValueError("Id carries no site")
        elif self.site is None or self.site < 1:
            raise ValueError(f"{self.kind} needs a site index >= 1, got {self.site}")

    def check_range(self, N: int) -> None:
        """Raise unless the symbol is admissible for pair indices 1..N."""
        if self.kind is Kind.Id:
            return
        top = N + 1 if self.kind in SINGLE_SITE else N
        if not 1 <= self.site <= top:
            raise SymbolOutOfRange(f"{self} out of range for N={N}")

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "site": self.site}

    @classmethod
    def from_json(cls, data: Mapping) -> GeneratorSymbol:
        return cls(Kind(data["kind"]), data.get("site"))

    def __str__(self):
        return self.kind.value if self.site is None else f"{self.kind.value}{self.site}"


Word = tuple[GeneratorSymbol, ...]


class AlgebraElement:
    """Finite linear combination of generator words with Laurent coefficients.

    The empty word is the identity. Symbols of kind ``Id`` are dropped from
    words on construction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, object] | Iterable[tuple[object, Word]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else ((w, c) for c, w in terms)
        clean: dict[Word, LaurentPoly] = {}
        for word, coeff in items:
            word = tuple(s for s in word if s.kind is not Kind.Id)
            c = clean.get(word, LaurentPoly()) + LaurentPoly.coerce(coeff)
            if c.is_zero():
                clean.pop(word, None)
            else:
                clean[word] = c
        self._terms = clean

    @classmethod
    def gen(cls, kind, site=None) -> AlgebraElement:
        return cls({(GeneratorSymbol(Kind(kind), site),): 1})

    @classmethod
    def identity(cls) -> AlgebraElement:
        return cls({(): 1})

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls()

    @property
    def terms(self) -> list[tuple[LaurentPoly, Word]]:
        return [(c, w) for w, c in self._terms.items()]

    def symbols(self) -> set[GeneratorSymbol]:
        return {s for w in self._terms for s in w}

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        other = _as_element(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, LaurentPoly()) + c
        return AlgebraElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_element(other))

    def __rsub__(self, other):
        return _as_element(other) - self

    def __mul__(self, other):
        if isinstance(other, (numbers.Number, LaurentPoly)):
            return AlgebraElement({w: c * other for w, c in self._terms.items()})
        other = _as_element(other)
        out: dict[Word, LaurentPoly] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, LaurentPoly()) + c1 * c2
        return AlgebraElement(out)

    def __rmul__(self, other):
        if isinstance(other, (numbers.Number, LaurentPoly)):
            return self * other
        return _as_element(other) * self

    def __pow__(self, k: int):
        out = AlgebraElement.identity()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_coefficients(self, f) -> AlgebraElement:
        return AlgebraElement({w: f(c) for w, c in self._terms.items()})

    def to_json(self) -> list:
        return [
            {"coeff": c.to_json(), "word": [s.to_json() for s in w]}
            for w, c in sorted(self._terms.items(), key=lambda t: [str(s) for s in t[0]])
        ]

    @classmethod
    def from_json(cls, data) -> AlgebraElement:
        return cls({
            tuple(GeneratorSymbol.from_json(s) for s in t["word"]): LaurentPoly.from_json(t["coeff"])
            for t in data
        })

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self._terms.items():
            word = "·".join(str(s) for s in w) or "I"
            parts.append(word if c == 1 else f"({c})·{word}")
        return " + ".join(parts)


def _as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, GeneratorSymbol):
        return AlgebraElement({(x,): 1})
    if isinstance(x, (numbers.Number, LaurentPoly)):
        return AlgebraElement({(): x})
    raise TypeError(f"cannot use {type(x).__name__} as an algebra element")


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class AlgebraParams:
    flavor: Flavor
    lam: complex
    q: complex
    omega: complex
    sigma: int
    eta: complex
    sqrtQ: complex
    eta_branch: int = 0

    def coefficient_values(self) -> dict[str, complex]:
        return {"q": self.q, "omega": self.omega, "sqrtQ": self.sqrtQ}

    def evaluate(self, c: LaurentPoly) -> complex:
        return c.evaluate(self.q, self.omega, self.sqrtQ)

    def to_json(self) -> dict:
        def cpx(z):
            z = complex(z)
            return [z.real, z.imag]
        return {
            "flavor": self.flavor.value, "lambda": cpx(self.lam), "q": cpx(self.q),
            "omega": cpx(self.omega), "sigma": self.sigma, "eta": cpx(self.eta),
            "sqrtQ": cpx(self.sqrtQ), "eta_branch": self.eta_branch,
        }


def _check_nondegenerate(lam: complex, eta: complex) -> None:
    if abs(cmath.sin(lam)) < DEGENERACY_TOL:
        raise DegenerateParams(f"sin(lambda) vanishes at lambda={lam}")
    if abs(cmath.sin(eta * lam)) < DEGENERACY_TOL:
        raise DegenerateParams(f"sin(eta*lambda) vanishes at eta={eta}, lambda={lam}")


def derive_params(flavor, lam, omega=None, sigma=None) -> AlgebraParams:
    """Fill in all algebra parameters from the user-facing ones.

    For dTL everything follows from ``lam``: q = exp(-i lam), omega = -q^3,
    sqrtQ = -(q^2 + q^-2), eta = 3/2, sigma = -1.

    For dBWM ``omega`` and ``sigma`` are required and eta is taken from the
    principal logarithm of ``sigma*omega = exp(-2i eta lam)``; the branch
    index (always 0 here) is recorded on the result.
    """
    flavor = Flavor.parse(flavor)
    lam = complex(lam)
    q = cmath.exp(-1j * lam)
    if flavor is Flavor.dTL:
        if omega is not None or sigma is not None:
            raise ValueError("dTL fixes omega and sigma; do not pass them")
        params = AlgebraParams(flavor, lam, q, -q**3, -1, 1.5, -(q**2 + q**-2))
        _check_nondegenerate(lam, params.eta)
        return params

    if omega is None or sigma is None:
        raise ValueError("dBWM needs omega and sigma")
    omega = complex(omega)
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if abs(q**4 - 1) < DEGENERACY_TOL:
        raise DegenerateParams(f"q^4 = 1 at lambda={lam}")
    eta = 1j * cmath.log(sigma * omega) / (2 * lam)
    if abs(eta.imag) < 1e-14 * max(1.0, abs(eta)):
        eta = complex(eta.real, 0.0)
    _check_nondegenerate(lam, eta)
    sqrtQ = 1 + (omega - 1 / omega) / (q - 1 / q)
    return AlgebraParams(flavor, lam, q, omega, int(sigma), eta, sqrtQ, 0)


# ---------------------------------------------------------------------------
# representations and evaluation


class Representation:
    """Anything that maps generator symbols to square matrices.

    Subclasses set ``n_sites``, ``dim`` and ``params`` and implement
    :meth:`_matrix`. Matrices are cached per symbol.
    """

    n_sites: int
    dim: int
    params: AlgebraParams

    def _matrix(self, symbol: GeneratorSymbol) -> np.ndarray:
        raise NotImplementedError

    def matrix(self, symbol: GeneratorSymbol) -> np.ndarray:
        cache = self.__dict__.setdefault("_cache", {})
        if symbol not in cache:
            if symbol.kind is Kind.Id:
                m = np.eye(self.dim, dtype=complex)
            else:
                symbol.check_range(self.n_sites - 1)
                m = np.asarray(self._matrix(symbol), dtype=complex)
            m.setflags(write=False)
            cache[symbol] = m
        return cache[symbol]


def eval_element(rep: Representation, element) -> np.ndarray:
    element = _as_element(element)
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for coeff, word in element.terms:
        c = rep.params.evaluate(coeff)
        if OPERATOR_ORDER:
            seq = word
        else:
            seq = word[::-1]
        m = np.eye(rep.dim, dtype=complex)
        for s in seq:
            m = m @ rep.matrix(s)
        out += c * m
    return out


@dataclass
class RelationReport:
    tol: float
    residuals: dict[str, float] = field(default_factory=dict)
    families: dict[str, str] = field(default_factory=dict)

    @property
    def family_max(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for name, r in self.residuals.items():
            fam = self.families[name]
            out[fam] = max(out.get(fam, 0.0), r)
        return out

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    @property
    def failures(self) -> list[str]:
        return [n for n, r in self.residuals.items() if not r <= self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "passed": self.passed, "tol": self.tol, "max_residual": self.max_residual,
            "family_max": self.family_max, "failures": self.failures,
            "residuals": self.residuals,
        }


def relation_residual(rep: Representation, lhs, rhs) -> float:
    a = eval_element(rep, lhs)
    b = eval_element(rep, rhs)
    return float(np.linalg.norm(a - b) / max(1.0, np.linalg.norm(a)))


def check_relations(rep: Representation, catalog, tol: float, jobs: int = 1) -> RelationReport:
    """Relative Frobenius residual of every catalog relation in ``rep``."""
    if catalog.relations and rep.n_sites < catalog.N + 1:
        raise SymbolOutOfRange(
            f"representation has {rep.n_sites} sites, catalog needs {catalog.N + 1}")
    rels = list(catalog.relations)

    def one(rel):
        return relation_residual(rep, rel.lhs, rel.rhs)

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            values = list(pool.map(one, rels))
    else:
        values = [one(r) for r in rels]
    report = RelationReport(tol)
    for rel, r in zip(rels, values):
        report.residuals[rel.name] = r
        report.families[rel.name] = rel.family.value
    return report

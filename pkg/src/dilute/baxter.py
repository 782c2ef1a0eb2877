"""Spectral-parameter face operators X_j(u) and checks of the identities they obey.

Two forms are available. ``"dtl"`` writes X(u) in terms of projectors, the
monoid generator E, slants, cap and cup; ``"dbwm"`` uses the braid and its
inverse in place of E. On dTL representations with eta = 3/2, sigma = -1
and omega = -q^3 the two forms agree identically.
"""
from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass, replace

import numpy as np

from .algebra import (
    DEGENERACY_TOL, AlgebraParams, Flavor, GeneratorSymbol, Kind, Representation,
)
from .errors import DegenerateParams, UnsupportedFlavor
from .vertex import VertexRep, embed

# Sign in front of sigma in the vacancy-vacancy coefficient. With unit-weight
# slants and q**(2*eta) == sigma*omega the Yang-Baxter equation holds only
# for -1; +1 leaves an O(1) residual (see tests/test_baxter.py).
VACANCY_SIGN = -1

FORMS = ("dtl", "dbwm")


def _denominators(params: AlgebraParams) -> tuple[complex, complex]:
    sl = cmath.sin(params.lam)
    se = cmath.sin(params.eta * params.lam)
    if abs(sl) < DEGENERACY_TOL or abs(se) < DEGENERACY_TOL:
        raise DegenerateParams(
            f"sin(lambda)={sl:.3g}, sin(eta*lambda)={se:.3g}: face operator undefined")
    return sl, se


def face_coefficients(params: AlgebraParams, u: complex, form: str = "dtl") -> dict[Kind, complex]:
    """Coefficient of each two-site generator in X(u)."""
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")
    u = complex(u)
    lam = params.lam
    crossing = params.eta * lam
    sl, se = _denominators(params)
    both = sl * se
    sin = cmath.sin
    g = sin(u) * sin(crossing - u) / both
    coeffs = {
        Kind.SlantF: g,
        Kind.SlantB: g,
        Kind.Psv: sin(crossing - u) / se,
        Kind.Pvs: sin(crossing - u) / se,
        Kind.Cap: sin(u) / se,
        Kind.Cup: sin(u) / se,
        Kind.Pvv: 1 + VACANCY_SIGN * params.sigma * g,
    }
    if form == "dtl":
        coeffs[Kind.Pss] = sin(lam - u) * sin(crossing - u) / both
        coeffs[Kind.E] = -sin(u) * sin(crossing - lam - u) / both
    else:
        pre = -sin(u) / (2j * both)
        coeffs[Kind.Pss] = 1.0
        coeffs[Kind.Braid] = pre * cmath.exp(1j * (crossing - u))
        coeffs[Kind.BraidInv] = -pre * cmath.exp(1j * (u - crossing))
    return coeffs


@dataclass(frozen=True, eq=False)
class FaceOperatorFamily:
    """u -> X_j(u) for a representation.

    ``params`` defaults to the representation's own parameters; passing
    a modified copy is how negative controls (e.g. flipped sigma) are built.
    """

    rep: Representation
    form: str = "dtl"
    params: AlgebraParams | None = None

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}")
        if self.params is None:
            object.__setattr__(self, "params", self.rep.params)
        if self.form == "dtl" and self.params.flavor is not Flavor.dTL:
            raise UnsupportedFlavor("the E-form face operator needs a dTL representation")
        _denominators(self.params)

    @property
    def n_sites(self) -> int:
        return self.rep.n_sites

    @property
    def local_dim(self) -> int:
        return self.rep.local_dim

    def with_params(self, **changes) -> FaceOperatorFamily:
        return FaceOperatorFamily(self.rep, self.form, replace(self.params, **changes))

    def coefficients(self, u) -> dict[Kind, complex]:
        return face_coefficients(self.params, u, self.form)

    def local(self, u) -> np.ndarray:
        """Two-site matrix X(u); vertex representations only."""
        if not isinstance(self.rep, VertexRep):
            raise TypeError("two-site face operator needs a vertex representation")
        d = self.rep.local_dim
        out = np.zeros((d * d, d * d), dtype=complex)
        for kind, c in self.coefficients(u).items():
            out += c * self.rep.local(kind)
        return out

    def X(self, j: int, u) -> np.ndarray:
        """X_j(u) on the whole chain."""
        if isinstance(self.rep, VertexRep):
            return embed(self.local(u), j, self.rep.n_sites, self.rep.local_dim)
        out = np.zeros((self.rep.dim, self.rep.dim), dtype=complex)
        for kind, c in self.coefficients(u).items():
            out += c * self.rep.matrix(GeneratorSymbol(kind, j))
        return out


def face_operator_dtl(rep: Representation, j: int, u) -> np.ndarray:
    return FaceOperatorFamily(rep, "dtl").X(j, u)


def face_operator_dbwm(rep: Representation, j: int, u) -> np.ndarray:
    return FaceOperatorFamily(rep, "dbwm").X(j, u)


# ---------------------------------------------------------------------------
# identities


def check_ybe(family: FaceOperatorFamily, j: int, u, v) -> float:
    """Relative residual of X_{j+1}(u) X_j(u+v) X_{j+1}(v) = X_j(v) X_{j+1}(u+v) X_j(u).

    Normalized by the lhs norm. Where both products vanish (e.g. u = v at
    the crossing point) the lhs norm is pure round-off; the product of the
    three factor norms is used instead.
    """
    if j < 1 or j + 2 > family.n_sites:
        raise IndexError(f"YBE at j={j} needs at least {j + 2} sites")
    X = family.X
    a, b, c = X(j + 1, u), X(j, u + v), X(j + 1, v)
    scale = np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(c)
    if scale == 0:
        raise DegenerateParams(f"face operator vanishes identically at u={u}, v={v}")
    lhs = a @ b @ c
    rhs = X(j, v) @ X(j + 1, u + v) @ X(j, u)
    norm = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
    if norm <= 1e-12 * scale:
        norm = scale
    return float(np.linalg.norm(lhs - rhs) / norm)


def check_locality(family: FaceOperatorFamily, j: int, k: int, u, v) -> float:
    if abs(j - k) <= 1:
        raise IndexError(f"locality needs |j-k| > 1, got j={j}, k={k}")
    a, b = family.X(j, u), family.X(k, v)
    return float(np.linalg.norm(a @ b - b @ a))


def rho(params: AlgebraParams, u) -> complex:
    """Inversion normalization sin(lam-u) sin(eta lam-u) / (sin lam sin eta lam)."""
    sl, se = _denominators(params)
    lam = params.lam
    return cmath.sin(lam - u) * cmath.sin(params.eta * lam - u) / (sl * se)


def check_inversion(family: FaceOperatorFamily, j: int, u) -> float:
    prod = family.X(j, u) @ family.X(j, -u)
    scale = rho(family.params, u) * rho(family.params, -u)
    dim = prod.shape[0]
    resid = np.linalg.norm(prod - scale * np.eye(dim))
    return float(resid / max(1.0, abs(scale) * dim))


def grid_scan(fn, points, jobs: int = 1):
    """Evaluate ``fn(*p)`` over ``points``; returns ``(values, max, argmax)``.

    The aggregation does not depend on ``jobs``.
    """
    points = list(points)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(jobs) as pool:
            values = list(pool.map(lambda p: fn(*p), points))
    else:
        values = [fn(*p) for p in points]
    if not values:
        return values, 0.0, None
    k = int(np.argmax(values))
    return values, float(values[k]), points[k]


# ---------------------------------------------------------------------------
# crossing diagnostic


def crossing_partner(rep: VertexRep) -> list[int]:
    """Local state paired with each state by the crossing vector (vacancy to itself)."""
    m = rep.local_dim - 1
    partner = [0] + list(range(1, m + 1))
    if rep.crossing is not None:
        c = np.abs(np.asarray(rep.crossing)).reshape(m, m)
        for a in range(m):
            if c[a].max() > 0:
                partner[a + 1] = int(np.argmax(c[a])) + 1
    return partner


def _rotate_quarter(M: np.ndarray, d: int, partner) -> np.ndarray:
    """Move every weight a quarter turn round the face.

    With legs in=(a, b), out=(c, d) the new input pair is (bar c, a) and the
    new output pair is (d, bar b); the two legs that swap between input and
    output are replaced by their crossing partners.
    """
    T = M.reshape(d, d, d, d)         # [c, dd, a, b]
    out = np.zeros_like(T)
    for c, dd, a, b in itertools.product(range(d), repeat=4):
        out[dd, partner[b], partner[c], a] = T[c, dd, a, b]
    return out.reshape(d * d, d * d)


def _pattern(M: np.ndarray, tol: float) -> frozenset:
    scale = max(np.abs(M).max(), 1e-300)
    return frozenset(zip(*np.nonzero(np.abs(M) > tol * scale)))


def crossing_probe(family: FaceOperatorFamily, u, tol: float = 1e-12) -> dict:
    """Compare X(u) with the quarter-turn of X(eta*lam - u), entry by entry.

    Diagnostic only: a crossing gauge is not fixed, so the report lists the
    entries whose positions match together with the ratios X(u)/rotated,
    and whether the ratios have unit modulus.
    """
    d = family.local_dim
    crossing = family.params.eta * family.params.lam
    a = family.local(u)
    b = _rotate_quarter(family.local(crossing - u), d, crossing_partner(family.rep))
    pa, pb = _pattern(a, tol), _pattern(b, tol)
    matched = sorted(pa & pb)
    ratios = {f"{r},{c}": [complex(a[r, c] / b[r, c]).real, complex(a[r, c] / b[r, c]).imag]
              for r, c in matched}
    unit = all(abs(abs(complex(x, y)) - 1) < 1e-9 for x, y in ratios.values())
    return {
        "u": [complex(u).real, complex(u).imag],
        "crossing": [complex(crossing).real, complex(crossing).imag],
        "rotation": "in=(a,b), out=(c,d) -> in=(bar c,a), out=(d,bar b)",
        "same_pattern": pa == pb,
        "matched": [[int(r), int(c)] for r, c in matched],
        "unmatched_x": [[int(r), int(c)] for r, c in sorted(pa - pb)],
        "unmatched_rotated": [[int(r), int(c)] for r, c in sorted(pb - pa)],
        "ratios": ratios,
        "unit_modulus": unit,
    }


def support(M: np.ndarray, tol: float = 1e-13) -> list[tuple[int, int]]:
    scale = np.abs(M).max()
    if scale == 0:
        return []
    return sorted((int(r), int(c)) for r, c in zip(*np.nonzero(np.abs(M) > tol * scale)))


# ---------------------------------------------------------------------------
# weight export


def _jsonable(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def export_weights(family: FaceOperatorFamily, u, form: str = "face", tol: float = 1e-13) -> dict:
    """Boltzmann weights as ``[a, b, c, d, re, im]`` with (a, b) the incoming
    and (c, d) the outgoing two-site state. ``form="r"`` exports Perm @ X."""
    if form not in ("face", "r"):
        raise ValueError("form must be 'face' or 'r'")
    d = family.local_dim
    M = family.local(u)
    if form == "r":
        M = permutation(d) @ M
    entries = []
    for r, c in support(M, tol):
        out_a, out_b = divmod(r, d)
        in_a, in_b = divmod(c, d)
        z = complex(M[r, c])
        entries.append([in_a, in_b, out_a, out_b, z.real, z.imag])
    return {
        "local_dim": d, "form": form,
        "u_re": complex(u).real, "u_im": complex(u).imag,
        "lambda": _jsonable(family.params.lam),
        "entries": entries,
    }


def dumps_weights(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def permutation(d: int) -> np.ndarray:
    P = np.zeros((d * d, d * d))
    for a in range(d):
        for b in range(d):
            P[b * d + a, a * d + b] = 1.0
    return P

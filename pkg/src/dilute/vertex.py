"""Vertex-type representations on a chain of (m+1)-state sites.

Local state 0 is the vacancy; states 1..m are string colours. Two-site
states are ordered lexicographically, ``(a, b) -> a*(m+1) + b`` with ``a``
on the left site.
"""
from __future__ import annotations

import cmath
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .algebra import (
    SINGLE_SITE, AlgebraParams, Flavor, GeneratorSymbol, Kind, Representation,
    check_relations, derive_params,
)
from .catalog import build_catalog
from .errors import CatalogViolation, CubicViolation, NotConverged, RankError

# Crossing vector of the dTL representation, c[(a, b)] for string states a, b.
# Besides c.c = sqrtQ the zig-zag identities (cap next to cup equals two
# slants) need sum_b c[a,b] c[b,c] = delta_ac, which fixes the relative sign.
DTL_CROSSING = {(1, 2): lambda q: 1j * q, (2, 1): lambda q: -1j / q}


def embed(two_site: np.ndarray, j: int, n: int, local_dim: int) -> np.ndarray:
    """Place a two-site operator on sites (j, j+1) of an n-site chain."""
    d = local_dim
    if two_site.shape != (d * d, d * d):
        raise ValueError(f"expected a {d*d}x{d*d} matrix, got {two_site.shape}")
    if not 1 <= j <= n - 1:
        raise IndexError(f"pair index {j} outside 1..{n - 1}")
    left = np.eye(d ** (j - 1))
    right = np.eye(d ** (n - j - 1))
    return np.kron(np.kron(left, two_site), right)


def embed_site(one_site: np.ndarray, i: int, n: int, local_dim: int) -> np.ndarray:
    if not 1 <= i <= n:
        raise IndexError(f"site {i} outside 1..{n}")
    d = local_dim
    return np.kron(np.kron(np.eye(d ** (i - 1)), one_site), np.eye(d ** (n - i)))


def _string_indices(m: int) -> list[int]:
    d = m + 1
    return [a * d + b for a in range(1, d) for b in range(1, d)]


def _lift_ss(block: np.ndarray, m: int) -> np.ndarray:
    d = m + 1
    out = np.zeros((d * d, d * d), dtype=complex)
    idx = _string_indices(m)
    out[np.ix_(idx, idx)] = block
    return out


def _site_projectors(m: int) -> tuple[np.ndarray, np.ndarray]:
    v = np.zeros((m + 1, m + 1))
    v[0, 0] = 1.0
    return np.eye(m + 1) - v, v


def _dilute_pieces(m: int, c: np.ndarray, c_tilde: np.ndarray) -> dict[Kind, np.ndarray]:
    """Projectors, slants, cap and cup for crossing vectors indexed on string pairs."""
    d = m + 1
    s, v = _site_projectors(m)
    out = {
        Kind.Pss: np.kron(s, s), Kind.Psv: np.kron(s, v),
        Kind.Pvs: np.kron(v, s), Kind.Pvv: np.kron(v, v),
    }
    idx = _string_indices(m)
    col = np.zeros(d * d, dtype=complex)
    row = np.zeros(d * d, dtype=complex)
    col[idx] = c
    row[idx] = c_tilde
    vac = np.zeros(d * d)
    vac[0] = 1.0
    out[Kind.Cap] = np.outer(vac, row)
    out[Kind.Cup] = np.outer(col, vac)
    slant = np.zeros((d * d, d * d))
    for a in range(1, d):
        slant[a, a * d] = 1.0   # |0,a> <a,0|
    out[Kind.SlantF] = slant
    out[Kind.SlantB] = slant.T.copy()
    return out


@dataclass(eq=False)
class VertexRep(Representation):
    local_dim: int
    n_sites: int
    params: AlgebraParams
    gen_matrices: dict[Kind, np.ndarray]
    crossing: np.ndarray | None = None
    crossing_dual: np.ndarray | None = None
    gauge: complex = 1.0
    report: object = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return self.local_dim - 1

    @property
    def dim(self) -> int:
        return self.local_dim ** self.n_sites

    def local(self, kind) -> np.ndarray:
        return self.gen_matrices[Kind(kind)]

    def _matrix(self, symbol: GeneratorSymbol) -> np.ndarray:
        if symbol.kind in SINGLE_SITE:
            return embed_site(self.gen_matrices[symbol.kind], symbol.site,
                              self.n_sites, self.local_dim)
        return embed(self.gen_matrices[symbol.kind], symbol.site, self.n_sites, self.local_dim)

    def with_sites(self, n: int) -> VertexRep:
        return VertexRep(self.local_dim, n, self.params, self.gen_matrices,
                         self.crossing, self.crossing_dual, self.gauge, self.report)

    def replace(self, **matrices) -> VertexRep:
        """Copy with some two-site generator matrices swapped out."""
        gens = dict(self.gen_matrices)
        for k, mat in matrices.items():
            gens[Kind(k)] = np.asarray(mat, dtype=complex)
        return VertexRep(self.local_dim, self.n_sites, self.params, gens,
                         self.crossing, self.crossing_dual, self.gauge)

    def to_json(self) -> dict:
        p = self.params
        gens = {}
        for kind, mat in sorted(self.gen_matrices.items(), key=lambda t: t[0].value):
            rows, cols = np.nonzero(np.abs(mat) > 0)
            gens[kind.value] = [[int(r), int(c), float(mat[r, c].real), float(mat[r, c].imag)]
                                for r, c in zip(rows, cols)]
        return {
            "m": self.m, "q_re": p.q.real, "q_im": p.q.imag,
            "omega_re": p.omega.real, "omega_im": p.omega.imag, "sigma": p.sigma,
            "generators": gens,
        }


def build_dtl_rep(lam, n: int) -> VertexRep:
    """Three-state (vacancy, +, -) vertex representation of the dilute TL algebra."""
    params = derive_params(Flavor.dTL, lam)
    q = params.q
    m = 2
    c = np.zeros(m * m, dtype=complex)
    for (a, b), f in DTL_CROSSING.items():
        c[(a - 1) * m + (b - 1)] = f(q)
    gens = _dilute_pieces(m, c, c)
    s, v = _site_projectors(m)
    gens[Kind.S] = s
    gens[Kind.V] = v
    e = _lift_ss(np.outer(c, c), m)
    pss = gens[Kind.Pss]
    gens[Kind.E] = e
    gens[Kind.Braid] = pss / q + q * e
    gens[Kind.BraidInv] = q * pss + e / q
    gens = {k: np.asarray(val, dtype=complex) for k, val in gens.items()}
    return VertexRep(m + 1, n, params, gens, c, c)


def cubic_residual(B_ss: np.ndarray, q: complex, omega: complex) -> float:
    one = np.eye(B_ss.shape[0])
    cub = (B_ss - one / q) @ (B_ss + q * one) @ (B_ss - omega * one)
    scale = max(1.0, np.linalg.norm(B_ss) ** 3)
    return float(np.linalg.norm(cub) / scale)


def monoid_from_braid(B_ss: np.ndarray, q: complex, omega: complex) -> np.ndarray:
    one = np.eye(B_ss.shape[0])
    return (B_ss - one / q) @ (B_ss + q * one) / (omega * (q - 1 / q))


def factor_rank_one(E: np.ndarray, rtol: float = 1e-8) -> tuple[np.ndarray, np.ndarray, complex]:
    """Split a rank-one matrix as ``outer(c, c_tilde)``.

    The column ``c`` is scaled so that its first nonzero component is 1.
    Returns ``(c, c_tilde, gauge)`` where ``gauge`` is that original
    component of the dominant column.
    """
    sv = np.linalg.svd(E, compute_uv=False)
    if sv[0] == 0:
        raise RankError("monoid generator vanishes")
    rank = int(np.sum(sv > rtol * sv[0]))
    if rank != 1:
        raise RankError(f"monoid generator has rank {rank}, singular values {sv[:4]}")
    col = E[:, int(np.argmax(np.linalg.norm(E, axis=0)))]
    k = int(np.flatnonzero(np.abs(col) > 1e-12 * np.abs(col).max())[0])
    c = col / col[k]
    c_tilde = E[k, :].copy()
    return c, c_tilde, complex(c_tilde[k])


def build_dbwm_rep_from_braid(lam, omega, sigma, B_ss, n: int = 3, tol: float = 1e-10,
                              strict: bool = True) -> VertexRep:
    """Dilute a BWM braid matrix on string x string into a dBWM representation.

    The monoid generator is recovered from the braid, factored into its cup
    and cap halves, and the vacancy generators are attached with unit slant
    weights. The full dBWM catalog is then checked; with ``strict`` a
    failing relation raises :class:`CatalogViolation`, otherwise the report
    is only attached as ``rep.report``.
    """
    params = derive_params(Flavor.dBWM, lam, omega, sigma)
    q, omega = params.q, params.omega
    B_ss = np.asarray(B_ss, dtype=complex)
    m = int(round(np.sqrt(B_ss.shape[0])))
    if B_ss.shape != (m * m, m * m):
        raise ValueError(f"braid block must be (m^2, m^2), got {B_ss.shape}")
    res = cubic_residual(B_ss, q, omega)
    if res > tol:
        raise CubicViolation(f"cubic residual {res:.3e} exceeds {tol:.1e}")
    if abs(np.linalg.det(B_ss)) < 1e-12 or np.linalg.cond(B_ss) > 1e12:
        raise CubicViolation("braid matrix is not invertible")

    E_ss = monoid_from_braid(B_ss, q, omega)
    c, c_tilde, gauge = factor_rank_one(E_ss)

    gens = _dilute_pieces(m, c, c_tilde)
    s, v = _site_projectors(m)
    gens[Kind.S] = s
    gens[Kind.V] = v
    gens[Kind.E] = _lift_ss(E_ss, m)
    gens[Kind.Braid] = _lift_ss(B_ss, m)
    gens[Kind.BraidInv] = _lift_ss(np.linalg.inv(B_ss), m)
    gens = {k: np.asarray(val, dtype=complex) for k, val in gens.items()}
    rep = VertexRep(m + 1, n, params, gens, c, c_tilde, gauge)

    report = check_relations(rep, build_catalog(Flavor.dBWM, n - 1), tol)
    rep.report = report
    if strict and not report.passed:
        raise CatalogViolation(
            f"{len(report.failures)} dBWM relations fail: {', '.join(report.failures[:8])}",
            report)
    return rep


def ik_braid_limit(family, T: float = 30.0, tol: float = 1e-6) -> tuple[np.ndarray, dict]:
    """Braid-limit candidate of a face-operator family along u = -i*T.

    Both X(-iT) and X(-i(T+1)) are divided by their entry at the position of
    the largest magnitude in X(-iT); the relative difference of the two is
    the convergence measure.
    """
    a = family.local(-1j * T)
    b = family.local(-1j * (T + 1))
    k = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    a = a / a[k]
    b = b / b[k] if b[k] != 0 else b
    diff = float(np.linalg.norm(a - b) / np.linalg.norm(a))
    report = {"T": T, "relative_difference": diff, "normalized_at": [int(k[0]), int(k[1])]}
    if not diff <= tol:
        raise NotConverged(f"braid limit not converged at T={T}: difference {diff:.3e}")
    return a, report


# ---------------------------------------------------------------------------
# braid-matrix files


def braid_to_json(B_ss: np.ndarray, q: complex, omega: complex, sigma: int) -> dict:
    B_ss = np.asarray(B_ss, dtype=complex)
    m = int(round(np.sqrt(B_ss.shape[0])))
    rows, cols = np.nonzero(B_ss)
    return {
        "m": m, "q_re": q.real, "q_im": q.imag,
        "omega_re": complex(omega).real, "omega_im": complex(omega).imag, "sigma": int(sigma),
        "entries": [[int(r), int(c), float(B_ss[r, c].real), float(B_ss[r, c].imag)]
                    for r, c in zip(rows, cols)],
    }


def braid_from_json(data: dict) -> tuple[complex, complex, int, np.ndarray]:
    """Parse a braid file into ``(lam, omega, sigma, B_ss)``.

    ``lam`` is recovered from q = exp(-i lam) with the principal logarithm.
    """
    m = int(data["m"])
    q = complex(data["q_re"], data["q_im"])
    omega = complex(data["omega_re"], data["omega_im"])
    B = np.zeros((m * m, m * m), dtype=complex)
    for r, c, re, im in data["entries"]:
        B[int(r), int(c)] += complex(re, im)
    lam = 1j * cmath.log(q)
    if abs(lam.imag) < 1e-15:
        lam = complex(lam.real, 0.0)
    return lam, omega, int(data["sigma"]), B


def load_braid_file(path) -> tuple[complex, complex, int, np.ndarray]:
    return braid_from_json(json.loads(Path(path).read_text()))


def _distinct(values: np.ndarray, tol: float = 1e-8) -> list[complex]:
    out: list[complex] = []
    for z in values:
        if all(abs(z - w) > tol * max(1.0, abs(w)) for w in out):
            out.append(complex(z))
    return out


def braid_limit_experiment(family, T: float = 30.0, tol: float = 1e-10) -> dict:
    """Try to dilute the braid limit of a face-operator family as a BWM braid.

    The candidate (the full local-space braid, vacancy included, treated as
    m = local_dim colours) is rescaled so that two of its eigenvalues become
    q^-1 and -q; the third, if any, is taken as omega. Every assignment and
    both signs of sigma are tried. The outcome is recorded, not asserted:
    more than three distinct eigenvalues already rule out the cubic.
    """
    B, conv = ik_braid_limit(family, T)
    eigs = _distinct(np.linalg.eigvals(B))
    record = {"convergence": conv, "distinct_eigenvalues": [[z.real, z.imag] for z in eigs],
              "attempts": [], "success": False}
    if len(eigs) > 3:
        record["reason"] = f"{len(eigs)} distinct eigenvalues; a cubic allows at most 3"
        return record
    for x, y in itertools.permutations(eigs, 2):
        rest = [z for z in eigs if z not in (x, y)]
        for kappa in (np.sqrt(-1 / (x * y)), -np.sqrt(-1 / (x * y))):
            q = 1 / (kappa * x)
            lam = 1j * cmath.log(q)
            omega = kappa * rest[0] if rest else -q**3
            for sigma in (1, -1):
                attempt = {"q": [q.real, q.imag], "omega": [omega.real, omega.imag],
                           "sigma": sigma}
                try:
                    rep = build_dbwm_rep_from_braid(lam, omega, sigma, kappa * B, n=3,
                                                    tol=tol, strict=False)
                except Exception as exc:  # recorded as part of the experiment
                    attempt["error"] = f"{type(exc).__name__}: {exc}"
                else:
                    attempt["passed"] = rep.report.passed
                    attempt["failures"] = rep.report.failures[:10]
                    record["success"] |= rep.report.passed
                record["attempts"].append(attempt)
    return record

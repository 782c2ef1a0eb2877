"""Periodic row-to-row transfer matrices built from a face-operator family."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .baxter import FaceOperatorFamily, permutation
from .errors import SizeTooLarge

MAX_L = 8
MAX_DIM = 10_000


@dataclass(frozen=True)
class TransferSpec:
    family: FaceOperatorFamily
    L: int

    def __post_init__(self):
        d = self.family.local_dim
        if not 2 <= self.L <= MAX_L or d ** self.L > MAX_DIM:
            raise SizeTooLarge(
                f"L={self.L} with {d} local states exceeds the guard "
                f"(2 <= L <= {MAX_L}, dim <= {MAX_DIM})")

    @property
    def dim(self) -> int:
        return self.family.local_dim ** self.L


def r_matrix(family: FaceOperatorFamily, u) -> np.ndarray:
    """R(u) = Perm @ X(u); R(0) is the swap of the two local spaces."""
    return permutation(family.local_dim) @ family.local(u)


def transfer_matrix(spec: TransferSpec, u) -> np.ndarray:
    """T(u) = tr_aux R_{aux,L}(u) ... R_{aux,1}(u), aux as the left factor."""
    d, L = spec.family.local_dim, spec.L
    # blocks[a_out, a_in] is the d x d operator on the quantum site
    blocks = r_matrix(spec.family, u).reshape(d, d, d, d).transpose(0, 2, 1, 3)
    T = np.zeros((spec.dim, spec.dim), dtype=complex)
    for a0 in range(d):
        acc = blocks[:, a0]                       # sites 1..1, aux in = a0
        for _ in range(1, L - 1):
            acc = np.stack([
                sum(np.kron(acc[a1], blocks[a2, a1]) for a1 in range(d))
                for a2 in range(d)
            ])
        T += sum(np.kron(acc[a1], blocks[a0, a1]) for a1 in range(d))
    return T


def translation_operator(d: int, L: int) -> np.ndarray:
    """|s_1 ... s_L> -> |s_L s_1 ... s_{L-1}>."""
    D = d ** L
    out = np.zeros((D, D))
    for k in range(D):
        digits = np.unravel_index(k, (d,) * L)
        shifted = (digits[-1],) + digits[:-1]
        out[np.ravel_multi_index(shifted, (d,) * L), k] = 1.0
    return out


def commutator_norm(spec: TransferSpec, u, v) -> float:
    a, b = transfer_matrix(spec, u), transfer_matrix(spec, v)
    denom = np.linalg.norm(a) * np.linalg.norm(b)
    if denom == 0:
        return 0.0
    return float(np.linalg.norm(a @ b - b @ a) / denom)


def sort_eigenvalues(eigs: np.ndarray, decimals: int = 10) -> np.ndarray:
    """Descending modulus; ties (to ``decimals``) broken by ascending phase."""
    eigs = np.asarray(eigs, dtype=complex)
    mod = np.round(np.abs(eigs), decimals)
    phase = np.round(np.angle(eigs), decimals)
    order = np.lexsort((phase, -mod))
    return eigs[order]


def spectrum(spec: TransferSpec, u, k: int | None = None) -> np.ndarray:
    eigs = sort_eigenvalues(np.linalg.eigvals(transfer_matrix(spec, u)))
    return eigs if k is None else eigs[:k]


def vacancy_number(d: int, L: int) -> np.ndarray:
    """Diagonal operator counting vacancies (state 0) on the chain."""
    counts = [sum(1 for s in np.unravel_index(k, (d,) * L) if s == 0) for k in range(d ** L)]
    return np.diag(np.asarray(counts, dtype=float))


def symmetry_commutator(spec: TransferSpec, u) -> float:
    """Norm of [T(u), vacancy count]; reported, not assumed to vanish."""
    T = transfer_matrix(spec, u)
    N = vacancy_number(spec.family.local_dim, spec.L)
    return float(np.linalg.norm(T @ N - N @ T) / max(1.0, np.linalg.norm(T)))


def spectrum_csv(rows) -> str:
    """CSV with columns u_re, u_im, idx, eig_re, eig_im from ``(u, eigs)`` pairs."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u_re", "u_im", "idx", "eig_re", "eig_im"])
    for u, eigs in rows:
        u = complex(u)
        for i, z in enumerate(eigs):
            w.writerow([repr(u.real), repr(u.imag), i, repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()

"""
Commuting transfer matrices
===========================

Trace the row of R-matrices over an auxiliary site. T(0) is the one-site
shift, and T(u), T(v) commute for all u, v.
"""
import numpy as np

from dilute import FaceOperatorFamily, TransferSpec, build_dtl_rep, commutator_norm, spectrum
from dilute.transfer import symmetry_commutator, translation_operator, transfer_matrix

fam = FaceOperatorFamily(build_dtl_rep(0.6, 2), "dtl")
spec = TransferSpec(fam, 4)

print("T(0) is the shift:", np.array_equal(transfer_matrix(spec, 0.0), translation_operator(3, 4)))

us = np.linspace(0.0, 0.4, 5)
for a, b in zip(us, us[1:]):
    print(f"[T({a:.1f}), T({b:.1f})] = {commutator_norm(spec, a, b):.1e}")

print("leading eigenvalues at u = 0.2:")
print(np.round(spectrum(spec, 0.2, k=6), 6))

# vacancies are not conserved by this model
print("[T, N_vac] =", round(symmetry_commutator(spec, 0.2), 4))

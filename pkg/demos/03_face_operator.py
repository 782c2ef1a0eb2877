"""
The Baxterized face operator
============================

X(u) interpolates between the identity at u = 0 and E + Cap + Cup + Pvv at
the crossing point u = eta*lam. It solves the Yang-Baxter equation and the
inversion relation.
"""
import numpy as np

from dilute import (
    FaceOperatorFamily, build_dtl_rep, check_inversion, check_ybe, crossing_probe,
    export_weights,
)

rep = build_dtl_rep(0.6, 3)
fam = FaceOperatorFamily(rep, "dtl")
p = fam.params
print("crossing point eta*lam =", p.eta * p.lam)

for name, c in fam.coefficients(0.2).items():
    print(f"  {name!s:9s} {c.real:+.6f}")

print("nonzero weights:", len(export_weights(fam, 0.2)["entries"]))

grid = np.linspace(0.05, 0.45, 5)
ybe = max(check_ybe(fam, 1, u, v) for u in grid for v in grid)
inv = max(check_inversion(fam, 1, u) for u in grid)
print(f"YBE {ybe:.1e}   inversion {inv:.1e}")

# the same formula with the opposite vacancy-vacancy sign is not a solution
print("flipped sigma:", check_ybe(fam.with_params(sigma=1), 1, 0.2, 0.35))

probe = crossing_probe(fam, p.eta * p.lam / 2)
print("quarter turn at the self-crossing point: same pattern", probe["same_pattern"],
      "| unit-modulus ratios", probe["unit_modulus"])

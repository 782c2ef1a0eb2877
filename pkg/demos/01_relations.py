"""
Checking the defining relations on the three-state chain
=========================================================

Build the vacancy/+/- representation, evaluate every relation of the
catalog and look at the worst residual per family.
"""
import numpy as np

from dilute import Flavor, build_catalog, build_dtl_rep, check_relations

lam = 0.6
rep = build_dtl_rep(lam, 4)
print("q =", np.round(rep.params.q, 6), " sqrtQ =", np.round(rep.params.sqrtQ.real, 6))

# the catalog is formal: words in generators with Laurent coefficients
cat = build_catalog(Flavor.dTL, 3)
print(len(cat), "relations, e.g.")
for name in ("monoid_loop[1]", "cap_cup_loop[2]", "dtl_quadratic[1]"):
    r = cat[name]
    print("  ", name, ":", r.lhs, "=", r.rhs)

report = check_relations(rep, cat, tol=1e-10)
for fam, worst in sorted(report.family_max.items()):
    print(f"{fam:14s} {worst:.2e}")
print("passed:", report.passed)

# break something on purpose: the braid becomes the identity
broken = rep.replace(Braid=np.eye(9))
bad = check_relations(broken, cat, tol=1e-10)
print(len(bad.failures), "relations fail, first few:", bad.failures[:4])

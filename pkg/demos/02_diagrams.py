"""
Planar diagrams as an exact oracle
==================================

The diagram algebra needs no matrices: composition glues diagrams and every
closed loop costs a factor sqrtQ = -(q^2 + q^-2). Relations hold as exact
identities of Laurent polynomials.
"""
import cmath

from dilute import (
    Flavor, GeneratorSymbol, Kind, build_catalog, check_catalog_exact, check_relations,
    compose, enumerate_basis, generator_diagram, regular_representation,
)

for n in range(1, 5):
    a, b = enumerate_basis(n, "insertion"), enumerate_basis(n, "filter")
    print(f"n={n}: {len(a)} diagrams (two enumerations agree: {a == b})")

E = generator_diagram(GeneratorSymbol(Kind.E, 1), 2)
print("E1 E1 =", compose(E, E))

report = check_catalog_exact(build_catalog(Flavor.dTL, 2))
print("exact check:", report.checked, "relations, differences:", report.differences)

# the regular representation turns diagrams back into matrices
reg = regular_representation(3, cmath.exp(-0.45j))
print("regular rep dim", reg.dim, "passes:",
      check_relations(reg, build_catalog(Flavor.dTL, 2), 1e-12).passed)

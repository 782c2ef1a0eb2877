"""Dilute Temperley-Lieb and Birman-Wenzl-Murakami algebras, their
Baxterization into face operators, and numerical/exact verification of the
resulting Yang-Baxter, inversion and commuting-transfer-matrix identities."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    AlgebraElement, AlgebraParams, Flavor, GeneratorSymbol, Kind, RelationReport,
    check_relations, derive_params, eval_element,
)
from .baxter import (  # noqa: E402
    FaceOperatorFamily, check_inversion, check_locality, check_ybe, crossing_probe,
    export_weights, face_operator_dbwm, face_operator_dtl, rho,
)
from .catalog import Family, Relation, RelationCatalog, build_catalog  # noqa: E402
from .diagrams import (  # noqa: E402
    DiagramElement, DiluteDiagram, check_catalog_exact, compose, enumerate_basis,
    generator_diagram, regular_representation,
)
from .laurent import LaurentPoly  # noqa: E402
from .transfer import (  # noqa: E402
    TransferSpec, commutator_norm, r_matrix, spectrum, transfer_matrix,
)
from .vertex import (  # noqa: E402
    VertexRep, build_dbwm_rep_from_braid, build_dtl_rep, embed, ik_braid_limit,
)

__all__ = [
    "AlgebraElement", "AlgebraParams", "Flavor", "GeneratorSymbol", "Kind",
    "RelationReport", "check_relations", "derive_params", "eval_element",
    "FaceOperatorFamily", "check_inversion", "check_locality", "check_ybe",
    "crossing_probe", "export_weights", "face_operator_dbwm", "face_operator_dtl", "rho",
    "Family", "Relation", "RelationCatalog", "build_catalog",
    "DiagramElement", "DiluteDiagram", "check_catalog_exact", "compose",
    "enumerate_basis", "generator_diagram", "regular_representation",
    "LaurentPoly", "TransferSpec", "commutator_norm", "r_matrix", "spectrum",
    "transfer_matrix", "VertexRep", "build_dbwm_rep_from_braid", "build_dtl_rep",
    "embed", "ik_braid_limit",
]

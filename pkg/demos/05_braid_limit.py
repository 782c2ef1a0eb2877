"""
Braid limit of the face operator
================================

Sending u to -i*infinity leaves a u-independent matrix. Can it serve as the
braid of a dBWM algebra on the full three-state space? The answer is
recorded, not assumed.
"""
import json

from dilute import FaceOperatorFamily, build_dtl_rep
from dilute.vertex import braid_limit_experiment

fam = FaceOperatorFamily(build_dtl_rep(0.6, 2), "dtl")
record = braid_limit_experiment(fam, T=30)
print("converged to", f"{record['convergence']['relative_difference']:.1e}")
print("distinct eigenvalues:", len(record["distinct_eigenvalues"]))
print("success:", record["success"], "|", record.get("reason", ""))
print(json.dumps(record["distinct_eigenvalues"], indent=None))

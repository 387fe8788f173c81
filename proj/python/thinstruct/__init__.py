"""Recursive thin substructures and embedding-obstruction audits.

Thin Laakso structures live in l_q^{k+1}, thin diamonds in a discretized
L_p[0, k+1]; both come with exact distance identities that `verify` checks
to a relative tolerance.  The remaining functions measure obstruction
quantities on them: doubling constants, approximate midpoint sets, 4-point
roundness, distortion of explicit embeddings, contraction audits, and the
closed-form compression lower bounds.
"""

from ._core import (
    Structure,
    amuc_modulus,
    contract,
    distortion,
    doubling,
    four_point,
    gen_diamond,
    gen_laakso,
    graph_counts,
    load_cloud,
    lower_bound_rb,
    lower_bound_uc,
    mid_set,
    save_cloud,
    uc_modulus,
    verify,
)

__all__ = [
    "Structure",
    "amuc_modulus",
    "contract",
    "distortion",
    "doubling",
    "four_point",
    "gen_diamond",
    "gen_laakso",
    "graph_counts",
    "load_cloud",
    "lower_bound_rb",
    "lower_bound_uc",
    "mid_set",
    "save_cloud",
    "uc_modulus",
    "verify",
]

__version__ = "0.1.0"

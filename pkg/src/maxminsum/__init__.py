"""Access-balanced Steiner triple systems: constructions, sum metrics, dual
labelings, exhaustive searches and FRC placement simulation."""

from .design import (BlockLabeling, DesignError, DesignFile, NotSteinerError, SteinerTripleSystem,
                     SumStats, ValidityReport, complement_relabel, dual_point_sums, dual_sum_stats,
                     read_design, sum_stats, verify_sts, write_design)
from .constructions import (INFINITY, Pt, apply_relabeling, bose_mapping, bose_op, construct,
                            construct_bose, construct_skolem, identity_mapping, skolem_mapping,
                            skolem_op)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BlockLabeling", "DesignError", "DesignFile", "INFINITY", "NotSteinerError", "Pt",
    "SteinerTripleSystem", "SumStats", "ValidityReport", "apply_relabeling", "bose_mapping",
    "bose_op", "complement_relabel", "construct", "construct_bose", "construct_skolem",
    "dual_point_sums", "dual_sum_stats", "identity_mapping", "read_design", "skolem_mapping",
    "skolem_op", "sum_stats", "verify_sts", "write_design",
]

"""ILP module: model construction, assignment encoding, verification and LP export"""
from src.ilp.model import ConstraintGroup, IlpModel, LinearRow, TVar, XVar, build_model, expected_row_counts
from src.ilp.encoding import Assignment, decode_assignment, encode_solution, objective_value
from src.ilp.verify import RowViolation, verify
from src.ilp.lp_writer import export_lp, lp_filename, render_lp

__all__ = [
    "ConstraintGroup",
    "IlpModel",
    "LinearRow",
    "TVar",
    "XVar",
    "build_model",
    "expected_row_counts",
    "Assignment",
    "decode_assignment",
    "encode_solution",
    "objective_value",
    "RowViolation",
    "verify",
    "export_lp",
    "lp_filename",
    "render_lp",
]

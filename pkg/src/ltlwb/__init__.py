"""Workbench for LTL fragments: syntax, model checking, satisfiability,
parameter-preserving reductions, and width measurement."""

from .checker import (
    McInstance,
    brute_mc,
    exists_path,
    mc_counterexample,
    mc_universal,
    mc_x_bounded,
    sat,
    sat_x,
)
from .formula import (
    And,
    Bottom,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    NotExpressible,
    Or,
    Prop,
    Top,
    Until,
    ast_size,
    conj,
    disj,
    format_formula,
    fragment_of,
    nvar,
    props,
    rewrite_fragment,
    subformulas,
    temporal_depth,
    x_flatten,
)
from .graphs import (
    Decomposition,
    Graph,
    check_decomposition,
    exact_pathwidth,
    exact_treewidth,
    format_decomposition,
    format_graph,
    minfill_upper,
    parse_decomposition,
    parse_graph,
    syntax_graph,
    width,
)
from .instances import (
    Cnf3,
    InstanceFormatError,
    PwSatInstance,
    RectTilingInstance,
    SquareTilingInstance,
    format_cnf3,
    format_pwsat,
    format_rect_tiling,
    format_square_tiling,
    parse_cnf3,
    parse_pwsat,
    parse_rect_tiling,
    parse_square_tiling,
)
from .kripke import (
    KripkeFormatError,
    KripkeStructure,
    Lasso,
    branching_degree,
    eval_on_lasso,
    format_kripke,
    format_lasso,
    parse_kripke,
    parse_lasso,
    validate_lasso,
    validate_structure,
)
from .oracles import (
    solve_cnf,
    solve_pwsat,
    solve_rect_tiling,
    solve_square_tiling,
)
from .parser import ParseError, parse
from .reductions import (
    ReductionOutput,
    drop_conjunct,
    reduce_3sat_to_mc,
    reduce_pwsat_to_sat,
    reduce_recttiling_to_mc_u,
    reduce_recttiling_to_mc_xf,
    reduce_sqtiling_to_mc_t,
    reduce_sqtiling_to_mc_x,
    structure_graph,
)
from .verify import FAMILIES, VerifyReport, family_instances, run_family

__all__ = [
    "And",
    "Bottom",
    "Cnf3",
    "Decomposition",
    "FAMILIES",
    "Finally",
    "Formula",
    "Globally",
    "Graph",
    "Implies",
    "InstanceFormatError",
    "KripkeFormatError",
    "KripkeStructure",
    "Lasso",
    "McInstance",
    "Next",
    "Not",
    "NotExpressible",
    "Or",
    "ParseError",
    "Prop",
    "PwSatInstance",
    "RectTilingInstance",
    "ReductionOutput",
    "SquareTilingInstance",
    "Top",
    "Until",
    "VerifyReport",
    "ast_size",
    "branching_degree",
    "brute_mc",
    "check_decomposition",
    "conj",
    "disj",
    "drop_conjunct",
    "eval_on_lasso",
    "exact_pathwidth",
    "exact_treewidth",
    "exists_path",
    "family_instances",
    "format_cnf3",
    "format_decomposition",
    "format_formula",
    "format_graph",
    "format_kripke",
    "format_lasso",
    "format_pwsat",
    "format_rect_tiling",
    "format_square_tiling",
    "fragment_of",
    "mc_counterexample",
    "mc_universal",
    "mc_x_bounded",
    "minfill_upper",
    "nvar",
    "parse",
    "parse_cnf3",
    "parse_decomposition",
    "parse_graph",
    "parse_kripke",
    "parse_lasso",
    "parse_pwsat",
    "parse_rect_tiling",
    "parse_square_tiling",
    "props",
    "reduce_3sat_to_mc",
    "reduce_pwsat_to_sat",
    "reduce_recttiling_to_mc_u",
    "reduce_recttiling_to_mc_xf",
    "reduce_sqtiling_to_mc_t",
    "reduce_sqtiling_to_mc_x",
    "rewrite_fragment",
    "run_family",
    "sat",
    "sat_x",
    "solve_cnf",
    "solve_pwsat",
    "solve_rect_tiling",
    "solve_square_tiling",
    "structure_graph",
    "subformulas",
    "syntax_graph",
    "temporal_depth",
    "validate_lasso",
    "validate_structure",
    "width",
    "x_flatten",
]

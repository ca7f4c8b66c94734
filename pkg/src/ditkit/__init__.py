"""Finite-universe toolkit for the dual logics of subsets and
partitions, plus executable universal-to-particular mechanism models."""

from .errors import (
    AlreadySetError,
    DitkitError,
    ElementOutOfRangeError,
    EmptyBlockError,
    FormulaSyntaxError,
    InvalidFitnessError,
    InvalidThresholdError,
    MissingElementError,
    NonPositiveFitnessError,
    NotEquivalenceError,
    OverlappingBlocksError,
    ResourceLimitError,
    SwitchIndexError,
    TextFormatError,
    TooManyVariablesError,
    UnbalancedParensError,
    UnboundVariableError,
    UniverseMismatchError,
    UniverseTooSmallError,
    UnknownConnectiveError,
)
from .formulas import (
    And,
    Const,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    PartitionAssignment,
    SubsetAssignment,
    Var,
    eval_partition,
    eval_subset,
    format_formula,
    formula_to_json,
    free_variables,
    parse,
    random_formula,
)
from .limits import DEFAULT_LIMITS, Limits
from .mechanisms import (
    Fitness,
    MechanismComparison,
    Scheme,
    SchemeRelation,
    SwitchBank,
    SwitchState,
    Trace,
    TraceStep,
    VariantSpace,
    compare_mechanisms,
    consistent_block,
    create,
    dual,
    generative_block,
    identify,
    opposite,
    replay,
    run_generative,
    run_selectionist,
    scheme_relations,
    selection_survivors,
    set_switch,
    switch_partition,
    twenty_questions,
)
from .partitions import (
    Connective,
    Partition,
    bell_number,
    discrete,
    dit,
    enumerate_partitions,
    hasse_cover_edges,
    indiscrete,
    indit,
    join,
    join_via_ditsets,
    lift_connective,
    meet,
    meet_via_interior,
    partition_from_blocks,
    partition_from_equivalence,
    refines,
    refines_via_ditsets,
    subset_lattice_nodes,
)
from .relations import PairRelation, Subset, interior, rst_closure
from .validity import (
    Counterexample,
    Verdict,
    partition_tautology,
    subset_valid,
    truth_table_tautology,
)

__all__ = [name for name in dir() if not name.startswith("_")]

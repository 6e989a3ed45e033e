from .bival import bival_decide
from .formula import (
    SCHEMAS,
    SYSTEMS,
    And,
    Formula,
    Imp,
    Not,
    Or,
    ParseError,
    Var,
    format_formula,
    gn_formula,
    match_schema,
    parse_formula,
    parse_many,
    subformula_closure,
)
from .proof import (
    ProofCheck,
    ProofLine,
    axiom_proof,
    check_proof,
    identity_proof,
    proof_from_json,
    proof_to_json,
    read_battery,
)
from .semantics import (
    BudgetExceeded,
    Verdict,
    as_matrix,
    battery,
    decide_consequence,
    formula_valid,
    legal_assignments,
    mp_preserves,
    passes_battery,
    schema_valid,
)

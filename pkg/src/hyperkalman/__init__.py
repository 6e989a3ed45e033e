"""Hyper swap structures over implicative hyperlattices, their quotients, and the logics they model."""
from .fixtures import FIXTURES, ch2, ch3, eq3, one_point
from .functors import (
    Morphism,
    compose,
    functor_laws,
    identity,
    lift_swap_morphism,
    phi,
    psi,
    quotient_morphism,
    verify_isomorphism,
    verify_morphism,
    verify_naturality,
)
from .godel import GodelMatrix, audit_axioms, godel_apply, godel_eval, pigeonhole_check
from .hcalg import quotient, sim_relation, verify_enriched, verify_hcmin, verify_hcw, verify_hcwplus
from .order import (
    Hyperalgebra,
    Proset,
    StructureError,
    canonical_algebra,
    canonical_implication,
    enumerate_structures,
    infimoid,
    supremoid,
    verify_cihl,
    verify_ihl,
)
from .report import Report, Violation
from .swap import Snapshot, SwapStructure, build_hyper_swap

__version__ = "0.1.0"

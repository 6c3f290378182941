"""ncalg: free noncommutative *-algebra toolkit.

Polynomial *-algebra over a countable generator family, induced
*-homomorphisms from test-space maps, CCR/CAR normal-ordering rewriting,
quasi-free and Fock states, truncated GNS construction, and lattice
continuum-limit experiments.
"""

from .algebra import (
    C0,
    AlgebraElement,
    Conjugation,
    format_scalar,
    from_vector,
    generator,
    to_text,
    unit,
    words_up_to,
    zero,
)
from .errors import (
    ConfigError,
    ConjugationMismatchError,
    DegreeBoundError,
    EmptyProbeError,
    ExpressionSyntaxError,
    GeneratorBlockError,
    IndexOutOfBlockError,
    InvalidRelationError,
    NcalgError,
    UnclassifiedGeneratorError,
)
from .expr import parse_expression
from .gns import GNSRep, build_gns
from .lattice import (
    ConvergenceReport,
    EmbeddingScheme,
    LatticeScalarModel,
    Probe,
    continuum_experiment,
    convergence_test,
    embed,
    ground_two_point,
)
from .qmaps import (
    CHom,
    GeneratorMap,
    TestSpace,
    check_core,
    combine_qmaps,
    induce_star_hom,
    project,
)
from .rewrite import (
    LadderSpec,
    RelationSet,
    catalog_phi6,
    catalog_phi7,
    ladder_relations,
    ladder_spec,
    normal_order,
    normal_order_stats,
    vacuum_expectation,
)
from .states import (
    FockOracle,
    MomentTableState,
    PositivityReport,
    QuasiFreeState,
    State,
    fock_moment,
    phi6_fock_oracle,
    positivity_check,
    restrict,
    state_from_json,
    state_to_json,
    two_point_from_state,
    wick_evaluate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

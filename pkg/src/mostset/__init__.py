"""Most-intersection of set collections via natural density."""
from .density_core import (
    EMPTY,
    NATURALS,
    DensityEstimate,
    EventuallyPeriodicSet,
    OracleSet,
    asymptotic,
    canonicalize,
    cofinite,
    complement,
    density,
    difference,
    finite,
    intersect,
    member,
    most,
    most_sim,
    multiples,
    partial_density,
    periodic,
    union,
)
from .errors import (
    AlphabetMismatch,
    CertificateRequired,
    EmptyCollection,
    InvalidHypergraph,
    InvalidSpec,
    MostsetError,
    ProductTooLarge,
    RegexSyntaxError,
    UniverseNotInfinite,
)
from .families import (
    IndexedFamily,
    acceptance_prefix,
    most_intersect_estimated,
    most_intersect_finite,
    most_intersect_indexed,
    most_intersect_pair,
    set_interpretation,
    union_map,
)
from .hypergraph import Hypergraph, InfiniteHypergraph, average_state, average_state_infinite, is_balanced

__version__ = "0.1.0"

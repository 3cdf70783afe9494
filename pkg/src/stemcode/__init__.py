"""Additive stem similarity for DNA codes.

Similarity and distance kernels, weight tables, code construction and
verification, and the critical relative distance of a weight table.
"""

__version__ = "0.1.0"

from .alphabet import (
    ALL_STEMS,
    BASES,
    Stem,
    Strand,
    complement,
    is_self_reverse_complementary,
    reverse_complement,
    stems_of,
)
from .codes import (
    CodeParams,
    DnaCode,
    ValidityReport,
    code_min_distance,
    construct_repetition_code,
    exhaustive_max_code,
    generate_markov_code,
    is_valid_dna_code,
    rate_estimate,
)
from .critical import (
    CriticalReport,
    RateRegime,
    StemDistribution,
    TransitionModel,
    classify_rate,
    conditional_model,
    markov_condition,
    marginals,
    maximize_critical,
    objective,
)
from .errors import (
    CodeError,
    ConvergenceError,
    DistributionError,
    StemcodeError,
    StrandError,
    WeightTableError,
)
from .similarity import duplex_energy, stem_distance, stem_similarity
from .weights import (
    BuiltinTable,
    WeightTable,
    constant_table,
    load_builtin,
    load_table_file,
    min_weight,
    relative,
)

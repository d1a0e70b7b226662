"""Symmetric chain machinery for the Boolean lattice 2^[n].

Signatures via bracket matching, the mirror bijection between the upper
and lower half, the induced partial order on the upper half with its
normalized matching certificates, chain partitions into rank-symmetric
chains of near-uniform size, and generators/counters of symmetric chain
decompositions.
"""

from .counting import (
    MatchingSequence,
    count_complete_matchings,
    count_scds_exact,
    kleitman_bit_count,
    kleitman_extend,
    matching_lower_bound,
    matchings_to_scd,
    scd_bounds_report,
)
from .errors import (
    ConstructionError,
    DomainError,
    InputError,
    ResourceLimitError,
    SymchainError,
)
from .lattice import (
    CircularInterval,
    GroundSet,
    Subset,
    circ_count,
    disc_count,
    format_subset,
    interval_mod,
    level,
    max_ground_size,
    parse_subset,
)
from .partition import (
    AlphaInterval,
    ChainPartition,
    FSchedule,
    PartitionVerdict,
    Universe,
    alpha_constant,
    alpha_partial_sum,
    btk_scd,
    f_schedule,
    partition_max_size,
    partition_min_size,
    pick_block_count,
    read_partition,
    t_threshold,
    uniform_rank_symmetric_partition,
    verify_partition,
    write_partition,
)
from .signature import (
    Chain,
    Signature,
    SignatureSymbol,
    Variant,
    btk_chain,
    circular_signature,
    mirror,
    mirror_inv,
    signature,
    star_pair_alignment,
)
from .symposet import (
    ComponentReport,
    LevelGraph,
    NMVerdict,
    PosetNMVerdict,
    component_stats,
    covers_down,
    covers_up,
    edge_weight,
    less,
    level_graph,
    verify_normalized_matching,
    verify_poset_nm,
)

__version__ = "0.1.0"

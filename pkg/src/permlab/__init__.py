"""permlab: exact rearrangement distances on symmetric groups, toric
equivalence machinery, diameter bounds, and block transposition graph
analysis, all at exhaustive desk scale."""

from .core import (
    BlockTransposition,
    GammaMove,
    GeneratorSet,
    LambdaMove,
    Move,
    Permutation,
    Reversal,
    apply_block_transposition,
    apply_move,
    count_bonds,
    count_parity_adjacencies,
    cycle_decomposition,
    enumerate_generators,
    parse_move,
)
from .distance import (
    DistanceTable,
    RankCodec,
    build_distance_table,
    diameter,
    distance,
    distribution,
    load_or_build,
    pair_distance,
    sorting_sequence,
)
from .errors import (
    ArtifactIOError,
    FalsificationError,
    PermLabError,
    ResourceError,
    UsageError,
)
from .toric import (
    ExtendedPermutation,
    are_torically_equivalent,
    embed,
    linearize,
    parse_extended,
    reverse_map,
    shift_block_transposition,
    toric_class,
    toric_map,
    toric_reverse_group,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

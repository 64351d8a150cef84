"""Odd colorings of k-trees: constructions, an exact oracle and a verifier."""

from .branch import ConfigMatch, extract_branch, branch_ordering, classify_branch_2tree, classify_branch_3tree, check_match
from .errors import (
    InternalInvariantError,
    KTooSmallError,
    NotKTreeError,
    NotProperError,
    OddKTreeError,
)
from .graph import (
    AdditionOrdering,
    Coloring,
    Graph,
    OddReport,
    build_graph,
    good_addition_ordering,
    is_ktree,
    is_odd_coloring,
    lower_bound_construction,
    odd_condition_witness,
    recognize_ktree,
    verify_odd,
    verify_proper,
)
from .ktree_color import color_ktree, ktree_palette
from .oracle import (
    GenSpec,
    SearchConfig,
    enumerate_small_ktrees,
    exists_odd_coloring,
    odd_chromatic_exact,
    probe_conjecture,
    random_ktree,
)
from .threetree import color_3tree, extend_near_odd_3tree, find_unavoidable_3tree
from .twotree import color_2tree, extend_near_odd_2tree, find_unavoidable_2tree

__version__ = "0.1.0"

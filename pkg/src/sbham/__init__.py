"""Verification and enumeration tools for the shift-and-save-or-bump digraph SB(m, n)."""

from .core import (
    Certificate,
    CycleReport,
    FeedbackTable,
    Params,
    PermutationTable,
    adjust,
    cycle_decomposition,
    hamiltonian_orbit_length,
    index_to_word,
    is_hamiltonian,
    out_neighbors,
    permutation_table,
    predecessor,
    rotate,
    rotation_table,
    successor,
    verify_certificate,
    word_to_index,
)
from .debruijn import Sequence, is_debruijn, sequence_from_feedback
from .enumeration import (
    EnumerationReport,
    SearchSpace,
    build_search_space,
    enumerate_space,
    partition,
    sample_signs,
)
from .necklace import (
    CountingReport,
    ObstructionReport,
    counting_report,
    dihedral_orbit_count,
    necklace_count,
    necklace_count_bruteforce,
    necklace_parity,
    obstruction_verdict,
    reflection_fix_counts,
    rfix_count,
    rotation_fix_counts,
    sign_adjust,
    sign_sigma,
)

__version__ = "0.1.0"

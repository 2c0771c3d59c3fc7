"""Counting and decision engines."""

from .colour_coding import decide_colour_coding, decide_multicolour_bruteforce, decide_multicolour_dp
from .dp import count_colourful_copies_dp
from .exact import (Decision, count_colourful_by_inclusion_exclusion, count_exact_bruteforce,
                    count_subsets_bruteforce, decide_bruteforce, find_witness_bruteforce)
from .hashing import HashFamily, build_k_perfect_family, validate_family
from .ramsey import decide_clique_or_is, ramsey_density_bound
from .sampling import SampleEstimate, approximate_count_sampling, ramsey_promise, required_samples
from .witness import WitnessResult, decide_via_witness_search, exact_oracle, sampling_oracle

__all__ = [
    "Decision", "HashFamily", "SampleEstimate", "WitnessResult",
    "approximate_count_sampling", "build_k_perfect_family", "count_colourful_by_inclusion_exclusion",
    "count_colourful_copies_dp", "count_exact_bruteforce", "count_subsets_bruteforce",
    "decide_bruteforce", "decide_clique_or_is", "decide_colour_coding", "decide_multicolour_bruteforce",
    "decide_multicolour_dp", "decide_via_witness_search", "exact_oracle", "find_witness_bruteforce",
    "ramsey_density_bound", "ramsey_promise", "required_samples", "sampling_oracle", "validate_family",
]

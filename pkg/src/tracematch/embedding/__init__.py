"""Trace embedding: subsequence checks, potential graphs, matching
enumeration, full-matching coverage and one-to-many candidates."""

from .coverage import check_observed_coverage
from .embed import DEFAULT_ENUMERATION_BUDGET, embed, verify_witness
from .graph import PotentialGraph, build_potential_graph
from .groups import instantiate_groups, one_to_many_candidates
from .matching import enumerate_maximum_matchings, max_matching_size
from .subsequence import subsequence
from .types import Criterion, EmbeddingResult, MappingFunction, mapping_text, one_to_one

__all__ = [
    "Criterion", "DEFAULT_ENUMERATION_BUDGET", "EmbeddingResult", "MappingFunction",
    "PotentialGraph", "build_potential_graph", "check_observed_coverage", "embed",
    "enumerate_maximum_matchings", "instantiate_groups", "mapping_text", "max_matching_size",
    "one_to_many_candidates", "one_to_one", "subsequence", "verify_witness",
]

"""Consistent sampling of k-subsets from transaction and incidence streams.

The package re-exports the compiled extension: hashing, the b-set samplers,
the one-pass estimators, the graph counters, the partitioned sketch, and the
CLI dispatcher.
"""

from ._cssample import (
    MAX_HASH_RANGE,
    MERSENNE61,
    InputIngestError,
    InputParseError,
    PartitionedSketch,
    PolynomialHash,
    SketchKind,
    __version__,
    brute_force_sample,
    bucket_hash,
    dispatch,
    estimate_bicliques,
    estimate_cliques,
    estimate_frequent_itemsets,
    exact_biclique_counts,
    exact_clique_counts,
    exact_counts,
    sample_bset,
    sample_bset_range,
    sample_bset_tradeoff,
    sampling_condition,
    star_sampler,
    subset_hash,
)

__all__ = [
    "MAX_HASH_RANGE",
    "MERSENNE61",
    "InputIngestError",
    "InputParseError",
    "PartitionedSketch",
    "PolynomialHash",
    "SketchKind",
    "__version__",
    "brute_force_sample",
    "bucket_hash",
    "dispatch",
    "estimate_bicliques",
    "estimate_cliques",
    "estimate_frequent_itemsets",
    "exact_biclique_counts",
    "exact_clique_counts",
    "exact_counts",
    "sample_bset",
    "sample_bset_range",
    "sample_bset_tradeoff",
    "sampling_condition",
    "star_sampler",
    "subset_hash",
]

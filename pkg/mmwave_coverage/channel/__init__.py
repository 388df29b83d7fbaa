"""Channel realizations and beamforming-gain sampling."""

from .channel_model import (
    ClusterBatch,
    ClusterRealization,
    array_factor,
    beamforming_vector,
    channel_matrix,
    sample_cluster_batch,
    sample_cluster_realization,
    spatial_signature,
)
from .gain_sampler import (
    GainSampleSet,
    aligned_gain,
    batch_gains,
    misaligned_gain,
    read_gain_csv,
    sample_gain_set,
    sample_gains,
    write_gain_csv,
)

__all__ = [
    "ClusterBatch",
    "ClusterRealization",
    "GainSampleSet",
    "aligned_gain",
    "array_factor",
    "batch_gains",
    "beamforming_vector",
    "channel_matrix",
    "misaligned_gain",
    "read_gain_csv",
    "sample_cluster_batch",
    "sample_cluster_realization",
    "sample_gain_set",
    "sample_gains",
    "spatial_signature",
    "write_gain_csv",
]

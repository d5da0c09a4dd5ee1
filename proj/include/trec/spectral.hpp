#pragma once

#include <cstdint>

#include "trec/dataset.hpp"
#include "trec/ensemble.hpp"

namespace trec {

struct SpectralConfig {
    int k_final = 4;
    int embed_dim = 0;       // 0 -> k_final
    int kmeans_restarts = 1;
    KmeansInit kmeans_init = KmeansInit::random_points;
    std::uint64_t seed = 0;
    // the N x N similarity matrix may be materialized only when N <= this
    Eigen::Index dense_threshold = 0;

    void validate() const;
};

// Row-normalized spectral embedding from the co-association factor:
// top-dim left singular vectors of D^{-1/2} * b, equivalently the leading
// eigenvectors of D^{-1/2} * H * D^{-1/2}, without forming H.
Matrix spectral_embedding(const CoAssocFactor& factor, int dim);

// Consensus partition: k-means (best of kmeans_restarts by WCSS) on the
// spectral embedding.
Partition spectral_consensus(const CoAssocFactor& factor, const SpectralConfig& cfg);

}  // namespace trec

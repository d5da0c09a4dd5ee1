#include "trec/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "trec/rng.hpp"

namespace trec {

void SpectralConfig::validate() const {
    if (k_final < 2) throw std::invalid_argument("spectral: k_final < 2");
    if (embed_dim < 0) throw std::invalid_argument("spectral: embed_dim < 0");
    if (kmeans_restarts < 1) throw std::invalid_argument("spectral: kmeans_restarts < 1");
}

namespace {

void row_normalize(Matrix& e) {
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        double norm = e.row(i).norm();
        if (norm > 1e-12) e.row(i) /= norm;
    }
}

Matrix embedding_lowrank(const CoAssocFactor& factor, int dim) {
    // degrees without forming H: d = b * (b^T * 1)
    Vector col_sums = factor.b.colwise().sum();
    Vector degrees = factor.b * col_sums;
    for (Eigen::Index i = 0; i < degrees.size(); ++i) {
        // unit diagonal of H forces d_i >= 1 for any valid factor
        assert(degrees(i) > 0.0);
        degrees(i) = 1.0 / std::sqrt(degrees(i));
    }
    Matrix scaled = degrees.asDiagonal() * factor.b;
    Eigen::BDCSVD<Matrix> svd(scaled, Eigen::ComputeThinU);
    Matrix e = svd.matrixU().leftCols(dim);
    row_normalize(e);
    return e;
}

Matrix embedding_dense(const CoAssocFactor& factor, int dim) {
    Matrix h = factor.dense();
    Vector degrees = h.rowwise().sum();
    for (Eigen::Index i = 0; i < degrees.size(); ++i) {
        assert(degrees(i) > 0.0);
        degrees(i) = 1.0 / std::sqrt(degrees(i));
    }
    Matrix norm_h = degrees.asDiagonal() * h * degrees.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(norm_h);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("spectral: eigendecomposition failed");
    // eigenvalues ascend; take the trailing dim columns in descending order
    const Eigen::Index n = h.rows();
    Matrix e(n, dim);
    for (int c = 0; c < dim; ++c) e.col(c) = eig.eigenvectors().col(n - 1 - c);
    row_normalize(e);
    return e;
}

}  // namespace

Matrix spectral_embedding(const CoAssocFactor& factor, int dim) {
    if (dim < 1) throw std::invalid_argument("spectral: embedding dim < 1");
    dim = static_cast<int>(std::min<Eigen::Index>(dim, factor.b.cols()));
    return embedding_lowrank(factor, dim);
}

Partition spectral_consensus(const CoAssocFactor& factor, const SpectralConfig& cfg) {
    cfg.validate();
    const Eigen::Index n = factor.size();
    if (static_cast<Eigen::Index>(cfg.k_final) > n)
        throw std::invalid_argument("spectral: k_final exceeds point count");

    int dim = cfg.embed_dim > 0 ? cfg.embed_dim : cfg.k_final;
    dim = static_cast<int>(std::min<Eigen::Index>(dim, factor.b.cols()));
    Matrix e = n <= cfg.dense_threshold ? embedding_dense(factor, dim)
                                        : embedding_lowrank(factor, dim);

    KmeansResult best;
    bool have = false;
    for (int r = 0; r < cfg.kmeans_restarts; ++r) {
        KmeansResult km = kmeans(
            e, cfg.k_final,
            derive_seed(cfg.seed, static_cast<std::uint64_t>(r), "spectral-restart"),
            100, 1e-6, cfg.kmeans_init);
        if (!have || km.wcss < best.wcss) {
            best = std::move(km);
            have = true;
        }
    }
    return best.part;
}

}  // namespace trec

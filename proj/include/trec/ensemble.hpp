#pragma once

#include <cstdint>
#include <vector>

#include "trec/dataset.hpp"

namespace trec {

struct KmeansResult {
    Partition part;
    Matrix centers;                  // k x d
    double wcss = 0.0;
    int iterations = 0;
    std::vector<double> cost_trace;  // wcss after each center update
};

enum class KmeansInit {
    kmeanspp,          // D^2-weighted seeding
    random_points,     // k distinct data points drawn uniformly
    random_box,        // k centroids uniform in the per-coordinate data range
    random_partition,  // centers = means of a uniformly random assignment
};

// Lloyd's algorithm. Empty clusters are repaired by claiming the point
// farthest from its current center. Deterministic per seed; ties in
// assignment go to the lowest center index.
KmeansResult kmeans(const Matrix& data, int k, std::uint64_t seed,
                    int max_iter = 100, double tol = 1e-6,
                    KmeansInit init = KmeansInit::kmeanspp);

// Per-point silhouette s = (b-a)/max(a,b) with Euclidean distances;
// singleton clusters score 0.
Vector silhouette(const Matrix& data, const Partition& part);

struct EnsembleConfig {
    int runs = 10;            // L
    int k_per_run = 4;
    int subspace_size = 3;    // features drawn without replacement per run
    int kmeans_max_iter = 100;
    double kmeans_tol = 1e-6;
    // random seeding keeps base learners weak and diverse, which is the
    // regime the consensus step is built for
    KmeansInit kmeans_init = KmeansInit::random_points;
    std::uint64_t seed = 0;

    void validate(Eigen::Index dim) const;
};

// Low-rank factor of the averaged co-association matrix H = b*b^T.
// b is N x (sum of per-run cluster counts) with a single 1/sqrt(L) per
// row-block. The nonzero columns are kept structurally so entry() can
// return the exact co-clustering fraction count/L.
struct CoAssocFactor {
    Matrix b;
    std::vector<std::vector<int>> columns;  // [run][point] -> column of the nonzero
    int runs = 0;

    Eigen::Index size() const { return b.rows(); }
    double entry(Eigen::Index i, Eigen::Index j) const;
    Matrix dense() const;  // N x N, materialized via entry()
};

CoAssocFactor coassoc_factor(const std::vector<Partition>& partitions);

struct EnsembleResult {
    std::vector<Partition> partitions;
    std::vector<std::vector<int>> subspaces;  // sorted feature indices per run
    CoAssocFactor factor;
    Vector sil;  // silhouette averaged over runs, each in its own subspace
};

// L base k-means runs on random feature subspaces.
EnsembleResult build_ensemble(const Dataset& data, const EnsembleConfig& cfg);

// Empirical majority-vote error for L Bernoulli(q)-correct voters
// (ties count as errors). One rate per requested ensemble size.
// Requires 0.5 < q <= 1 (weak learnability).
std::vector<double> simulate_vote_convergence(double q,
                                              const std::vector<int>& ensemble_sizes,
                                              int trials, std::uint64_t seed);

}  // namespace trec

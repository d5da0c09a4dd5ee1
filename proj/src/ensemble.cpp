#include "trec/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "trec/rng.hpp"

namespace trec {

namespace {

double sq_dist(const Matrix& data, Eigen::Index i, const Matrix& centers,
               Eigen::Index c) {
    return (data.row(i) - centers.row(c)).squaredNorm();
}

Matrix random_points_init(const Matrix& data, int k, Rng& rng) {
    const Eigen::Index n = data.rows();
    std::vector<Eigen::Index> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Matrix centers(k, data.cols());
    for (int c = 0; c < k; ++c) {
        std::size_t pick = c + static_cast<std::size_t>(rng.below(n - c));
        std::swap(idx[c], idx[pick]);
        centers.row(c) = data.row(idx[c]);
    }
    return centers;
}

Matrix random_box_init(const Matrix& data, int k, Rng& rng) {
    const Vector lo = data.colwise().minCoeff();
    const Vector hi = data.colwise().maxCoeff();
    Matrix centers(k, data.cols());
    for (int c = 0; c < k; ++c)
        for (Eigen::Index j = 0; j < data.cols(); ++j)
            centers(c, j) = lo(j) + rng.uniform() * (hi(j) - lo(j));
    return centers;
}

Matrix random_partition_init(const Matrix& data, int k, Rng& rng) {
    const Eigen::Index n = data.rows();
    Matrix centers = Matrix::Zero(k, data.cols());
    std::vector<int> sizes(k, 0);
    // one pass guaranteeing every cluster at least one member
    std::vector<int> assign(n);
    for (Eigen::Index i = 0; i < n; ++i)
        assign[i] = i < k ? static_cast<int>(i) : static_cast<int>(rng.below(k));
    for (Eigen::Index i = n - 1; i > 0; --i) {
        Eigen::Index j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(assign[i], assign[j]);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        centers.row(assign[i]) += data.row(i);
        ++sizes[assign[i]];
    }
    for (int c = 0; c < k; ++c) centers.row(c) /= static_cast<double>(sizes[c]);
    return centers;
}

Matrix kmeanspp_init(const Matrix& data, int k, Rng& rng) {
    const Eigen::Index n = data.rows();
    Matrix centers(k, data.cols());
    std::vector<char> taken(n, 0);

    Eigen::Index first = static_cast<Eigen::Index>(rng.below(n));
    centers.row(0) = data.row(first);
    taken[first] = 1;

    Vector d2(n);
    for (Eigen::Index i = 0; i < n; ++i) d2(i) = sq_dist(data, i, centers, 0);

    for (int c = 1; c < k; ++c) {
        double total = d2.sum();
        Eigen::Index pick = -1;
        if (total > 0.0) {
            double r = rng.uniform() * total;
            double acc = 0.0;
            for (Eigen::Index i = 0; i < n; ++i) {
                acc += d2(i);
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick < 0) pick = n - 1;  // r landed on the rounding edge
        }
        if (pick < 0 || taken[pick]) {
            // all remaining mass on duplicates: take the first free point
            for (Eigen::Index i = 0; i < n; ++i)
                if (!taken[i]) {
                    pick = i;
                    break;
                }
        }
        centers.row(c) = data.row(pick);
        taken[pick] = 1;
        for (Eigen::Index i = 0; i < n; ++i)
            d2(i) = std::min(d2(i), sq_dist(data, i, centers, c));
    }
    return centers;
}

}  // namespace

KmeansResult kmeans(const Matrix& data, int k, std::uint64_t seed, int max_iter,
                    double tol, KmeansInit init) {
    const Eigen::Index n = data.rows();
    if (k < 1) throw std::invalid_argument("kmeans: k < 1");
    if (static_cast<Eigen::Index>(k) > n)
        throw std::invalid_argument("kmeans: k exceeds point count");
    if (tol <= 0.0) throw std::invalid_argument("kmeans: tol <= 0");
    if (max_iter < 1) throw std::invalid_argument("kmeans: max_iter < 1");

    Rng rng(seed);
    Matrix centers;
    switch (init) {
        case KmeansInit::kmeanspp: centers = kmeanspp_init(data, k, rng); break;
        case KmeansInit::random_points: centers = random_points_init(data, k, rng); break;
        case KmeansInit::random_box: centers = random_box_init(data, k, rng); break;
        case KmeansInit::random_partition:
            centers = random_partition_init(data, k, rng);
            break;
    }
    std::vector<int> assign(n, 0);
    std::vector<int> sizes(k, 0);

    KmeansResult res;
    for (int iter = 0; iter < max_iter; ++iter) {
        // assignment
        std::fill(sizes.begin(), sizes.end(), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int best_c = 0;
            for (int c = 0; c < k; ++c) {
                double d = sq_dist(data, i, centers, c);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            assign[i] = best_c;
            ++sizes[best_c];
        }

        // repair empty clusters with the farthest point of a multi-point cluster
        for (int c = 0; c < k; ++c) {
            if (sizes[c] > 0) continue;
            double far = -1.0;
            Eigen::Index far_i = -1;
            for (Eigen::Index i = 0; i < n; ++i) {
                if (sizes[assign[i]] < 2) continue;
                double d = sq_dist(data, i, centers, assign[i]);
                if (d > far) {
                    far = d;
                    far_i = i;
                }
            }
            if (far_i < 0) throw std::runtime_error("kmeans: cannot repair empty cluster");
            --sizes[assign[far_i]];
            assign[far_i] = c;
            ++sizes[c];
            centers.row(c) = data.row(far_i);
        }

        // update
        Matrix next = Matrix::Zero(k, data.cols());
        for (Eigen::Index i = 0; i < n; ++i) next.row(assign[i]) += data.row(i);
        for (int c = 0; c < k; ++c) next.row(c) /= static_cast<double>(sizes[c]);

        double shift = 0.0;
        for (int c = 0; c < k; ++c)
            shift = std::max(shift, (next.row(c) - centers.row(c)).norm());
        centers = next;

        double cost = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) cost += sq_dist(data, i, centers, assign[i]);
        res.cost_trace.push_back(cost);
        res.iterations = iter + 1;
        if (shift <= tol) break;
    }

    res.centers = std::move(centers);
    res.wcss = res.cost_trace.back();
    res.part.assign = std::move(assign);
    res.part.k = k;
    res.part.validate();
    return res;
}

Vector silhouette(const Matrix& data, const Partition& part) {
    part.validate();
    const Eigen::Index n = data.rows();
    if (part.size() != n) throw std::invalid_argument("silhouette: partition size mismatch");
    const int k = part.k;
    const std::vector<int> sizes = part.cluster_sizes();

    Vector s(n);
    std::vector<double> mean_to(k);
    for (Eigen::Index i = 0; i < n; ++i) {
        const int own = part.assign[i];
        if (sizes[own] == 1) {
            s(i) = 0.0;
            continue;
        }
        std::fill(mean_to.begin(), mean_to.end(), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_to[part.assign[j]] += (data.row(i) - data.row(j)).norm();
        }
        double a = mean_to[own] / (sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == own || sizes[c] == 0) continue;
            b = std::min(b, mean_to[c] / sizes[c]);
        }
        if (!std::isfinite(b)) {
            s(i) = 0.0;  // single-cluster partition
            continue;
        }
        double denom = std::max(a, b);
        s(i) = denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return s;
}

void EnsembleConfig::validate(Eigen::Index dim) const {
    if (runs < 1) throw std::invalid_argument("ensemble: runs < 1");
    if (k_per_run < 2) throw std::invalid_argument("ensemble: k_per_run < 2");
    if (subspace_size < 1 || static_cast<Eigen::Index>(subspace_size) > dim)
        throw std::invalid_argument("ensemble: subspace_size outside [1, d]");
    if (kmeans_tol <= 0.0) throw std::invalid_argument("ensemble: kmeans_tol <= 0");
}

double CoAssocFactor::entry(Eigen::Index i, Eigen::Index j) const {
    if (i < 0 || j < 0 || i >= size() || j >= size())
        throw std::out_of_range("coassoc: index out of range");
    int count = 0;
    for (int l = 0; l < runs; ++l)
        count += columns[l][static_cast<std::size_t>(i)] ==
                 columns[l][static_cast<std::size_t>(j)];
    return static_cast<double>(count) / static_cast<double>(runs);
}

Matrix CoAssocFactor::dense() const {
    const Eigen::Index n = size();
    Matrix h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        h(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) h(i, j) = h(j, i) = entry(i, j);
    }
    return h;
}

CoAssocFactor coassoc_factor(const std::vector<Partition>& partitions) {
    if (partitions.empty()) throw std::invalid_argument("coassoc: no partitions");
    const Eigen::Index n = partitions.front().size();
    int m = 0;
    for (const auto& p : partitions) {
        if (p.size() != n) throw std::invalid_argument("coassoc: size mismatch");
        p.validate();
        m += p.k;
    }

    const int runs = static_cast<int>(partitions.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(runs));
    CoAssocFactor f;
    f.runs = runs;
    f.b = Matrix::Zero(n, m);
    f.columns.resize(runs, std::vector<int>(n));
    int offset = 0;
    for (int l = 0; l < runs; ++l) {
        for (Eigen::Index i = 0; i < n; ++i) {
            int col = offset + partitions[l].assign[i];
            f.b(i, col) = scale;
            f.columns[l][i] = col;
        }
        offset += partitions[l].k;
    }
    return f;
}

EnsembleResult build_ensemble(const Dataset& data, const EnsembleConfig& cfg) {
    data.validate();
    cfg.validate(data.dim());
    const Eigen::Index n = data.size();
    const Eigen::Index d = data.dim();

    EnsembleResult res;
    res.partitions.reserve(cfg.runs);
    res.subspaces.reserve(cfg.runs);
    Vector sil_sum = Vector::Zero(n);

    std::vector<int> all_features(d);
    std::iota(all_features.begin(), all_features.end(), 0);

    for (int l = 0; l < cfg.runs; ++l) {
        Rng sub_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(l), "subspace"));
        std::vector<int> pool = all_features;
        std::vector<int> subspace(cfg.subspace_size);
        for (int t = 0; t < cfg.subspace_size; ++t) {
            std::size_t pick = static_cast<std::size_t>(sub_rng.below(pool.size() - t));
            subspace[t] = pool[pick];
            std::swap(pool[pick], pool[pool.size() - 1 - t]);
        }
        std::sort(subspace.begin(), subspace.end());

        Matrix sub(n, cfg.subspace_size);
        for (int t = 0; t < cfg.subspace_size; ++t) sub.col(t) = data.features.col(subspace[t]);

        KmeansResult km =
            kmeans(sub, cfg.k_per_run,
                   derive_seed(cfg.seed, static_cast<std::uint64_t>(l), "kmeans"),
                   cfg.kmeans_max_iter, cfg.kmeans_tol, cfg.kmeans_init);
        sil_sum += silhouette(sub, km.part);
        res.partitions.push_back(std::move(km.part));
        res.subspaces.push_back(std::move(subspace));
    }

    res.factor = coassoc_factor(res.partitions);
    res.sil = sil_sum / static_cast<double>(cfg.runs);
    return res;
}

std::vector<double> simulate_vote_convergence(double q,
                                              const std::vector<int>& ensemble_sizes,
                                              int trials, std::uint64_t seed) {
    if (!(q > 0.5) || q > 1.0)
        throw std::invalid_argument("vote simulation: weak learnability needs 0.5 < q <= 1");
    if (trials < 1) throw std::invalid_argument("vote simulation: trials < 1");

    std::vector<double> rates;
    rates.reserve(ensemble_sizes.size());
    for (int len : ensemble_sizes) {
        if (len < 1) throw std::invalid_argument("vote simulation: ensemble size < 1");
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(len), "vote"));
        int errors = 0;
        for (int t = 0; t < trials; ++t) {
            int correct = 0;
            for (int l = 0; l < len; ++l) correct += rng.uniform() < q;
            if (2 * correct <= len) ++errors;  // a tie is not a correct majority
        }
        rates.push_back(static_cast<double>(errors) / static_cast<double>(trials));
    }
    return rates;
}

}  // namespace trec

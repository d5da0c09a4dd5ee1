#include "trec/transfer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "trec/rng.hpp"

namespace trec {

PairMatrix pair_meta_matrix(const Vector& sil) {
    for (Eigen::Index i = 0; i < sil.size(); ++i)
        if (sil(i) < -1.0 || sil(i) > 1.0)
            throw std::invalid_argument("meta matrix: silhouette outside [-1,1]");
    PairMatrix p;
    p.kind = PairKind::silhouette_pair;
    const Eigen::Index n = sil.size();
    p.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            p.values(i, j) = 0.5 * (sil(i) + sil(j));
    return p;
}

double objective(const PairMatrix& z_star, const PairMatrix& z_hat) {
    if (z_star.size() != z_hat.size())
        throw std::invalid_argument("objective: size mismatch");
    return (z_star.values - z_hat.values).norm();
}

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::q_min: return "q_min";
        case StopReason::it_max: return "it_max";
        case StopReason::no_improving_move: return "no_improving_move";
    }
    return "?";
}

std::pair<Partition, ProjectionTrace> project_to_partition(const PairMatrix& z_hat,
                                                           const Partition& init,
                                                           int k, double q_min,
                                                           int it_max,
                                                           bool q_min_on_squared) {
    z_hat.validate();
    if (z_hat.kind != PairKind::prediction && z_hat.kind != PairKind::coincidence)
        throw std::invalid_argument("projection: z_hat must be a Boolean pair matrix");
    init.validate();
    if (init.k != k) throw std::invalid_argument("projection: init cluster count != k");
    if (q_min < 0.0) throw std::invalid_argument("projection: q_min < 0");
    if (it_max < 0) throw std::invalid_argument("projection: it_max < 0");
    const Eigen::Index n = z_hat.size();
    if (init.size() != n) throw std::invalid_argument("projection: size mismatch");

    // Boolean copy; disagreement counts stay in integers throughout
    std::vector<std::vector<char>> want(n, std::vector<char>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) want[i][j] = z_hat.values(i, j) != 0.0;

    std::vector<int> assign = init.assign;
    std::vector<int> sizes = init.cluster_sizes();

    long long disagree = 0;  // over unordered pairs
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            disagree += (assign[i] == assign[j]) != static_cast<bool>(want[i][j]);

    auto norm_of = [](long long d) { return std::sqrt(2.0 * static_cast<double>(d)); };
    auto stop_value = [&](long long d) {
        return q_min_on_squared ? 2.0 * static_cast<double>(d) : norm_of(d);
    };

    ProjectionTrace trace;
    trace.objective_per_step.push_back(norm_of(disagree));

    std::vector<long long> mismatch(k);
    for (;;) {
        if (stop_value(disagree) < q_min) {
            trace.stop_reason = StopReason::q_min;
            break;
        }
        if (static_cast<int>(trace.moves.size()) >= it_max) {
            trace.stop_reason = StopReason::it_max;
            break;
        }

        // steepest move over all (point, cluster): one O(n) sweep per point
        long long best_delta = 0;
        int best_point = -1, best_to = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            const int own = assign[static_cast<std::size_t>(i)];
            if (sizes[own] == 1) continue;  // move would empty its cluster

            // mismatch[c] = want-0 neighbors inside cluster c; with i placed in
            // c the disagreements involving i are
            //   mismatch[c] + (want_total - want1_in_c),
            // want1_in_c being the want-1 neighbors already in c.
            long long want_total = 0;
            std::fill(mismatch.begin(), mismatch.end(), 0);
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                const bool w = want[i][j];
                want_total += w;
                if (!w) ++mismatch[assign[static_cast<std::size_t>(j)]];
            }
            auto mismatches_in = [&](int c) {
                const long long members = sizes[c] - (c == own);
                const long long want1_in_c = members - mismatch[c];
                return mismatch[c] + (want_total - want1_in_c);
            };
            const long long base = mismatches_in(own);
            for (int c = 0; c < k; ++c) {
                if (c == own) continue;
                const long long delta = mismatches_in(c) - base;
                if (delta < best_delta) {
                    best_delta = delta;
                    best_point = static_cast<int>(i);
                    best_to = c;
                }
            }
        }

        if (best_point < 0) {
            trace.stop_reason = StopReason::no_improving_move;
            break;
        }

        const int from = assign[static_cast<std::size_t>(best_point)];
        assign[static_cast<std::size_t>(best_point)] = best_to;
        --sizes[from];
        ++sizes[best_to];
        disagree += best_delta;
        trace.moves.push_back({best_point, from, best_to});
        trace.objective_per_step.push_back(norm_of(disagree));
    }

    Partition out;
    out.assign = std::move(assign);
    out.k = k;
    out.validate();
    return {std::move(out), std::move(trace)};
}

Ablation ablation_from_name(const std::string& name) {
    if (name == "both") return Ablation::both;
    if (name == "coassoc_only") return Ablation::coassoc_only;
    if (name == "silhouette_only") return Ablation::silhouette_only;
    throw std::invalid_argument("unknown ablation mode: " + name);
}

const char* ablation_name(Ablation a) {
    switch (a) {
        case Ablation::both: return "both";
        case Ablation::coassoc_only: return "coassoc_only";
        case Ablation::silhouette_only: return "silhouette_only";
    }
    return "?";
}

void TrecConfig::validate() const {
    if (k_target < 2) throw std::invalid_argument("trec: k_target < 2");
    if (q_min < 0.0) throw std::invalid_argument("trec: q_min < 0");
    if (it_max < 0) throw std::invalid_argument("trec: it_max < 0");
    svm.validate();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// (P(i,j), H(i,j)) rows over unordered pairs i<j; the ablated column is zeroed
Matrix meta_features(const PairMatrix& p, const CoAssocFactor& factor,
                     Ablation ablation) {
    const Eigen::Index n = p.size();
    Matrix out(n * (n - 1) / 2, 2);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j, ++row) {
            out(row, 0) = ablation == Ablation::coassoc_only ? 0.0 : p.values(i, j);
            out(row, 1) = ablation == Ablation::silhouette_only ? 0.0 : factor.entry(i, j);
        }
    return out;
}

}  // namespace

TrecResult run_trec(const Dataset& source, const Dataset& target,
                    const TrecConfig& cfg) {
    cfg.validate();
    source.validate();
    target.validate();
    if (!source.has_labels()) throw std::invalid_argument("trec: source must be labeled");

    TrecResult res;
    auto t0 = Clock::now();
    EnsembleResult ens_s = build_ensemble(source, cfg.ensemble_s);
    res.times.ensemble_s_ms = ms_since(t0);

    t0 = Clock::now();
    EnsembleResult ens_t = build_ensemble(target, cfg.ensemble_t);
    res.times.ensemble_t_ms = ms_since(t0);

    t0 = Clock::now();
    SpectralConfig spectral = cfg.spectral;
    spectral.k_final = cfg.k_target;
    res.ec_partition = spectral_consensus(ens_t.factor, spectral);
    res.times.spectral_ms = ms_since(t0);

    // source meta-features -> coincidence targets
    t0 = Clock::now();
    const PairMatrix p_s = pair_meta_matrix(ens_s.sil);
    const PairMatrix z_s = coincidence_from_labels(source.labels);
    const Matrix train_x = meta_features(p_s, ens_s.factor, cfg.ablation);
    std::vector<int> train_y;
    train_y.reserve(static_cast<std::size_t>(train_x.rows()));
    for (Eigen::Index i = 0; i < z_s.size(); ++i)
        for (Eigen::Index j = i + 1; j < z_s.size(); ++j)
            train_y.push_back(z_s.values(i, j) != 0.0 ? 1 : 0);

    try {
        res.model = train(train_x, train_y, cfg.svm);
    } catch (const SingleClassError& e) {
        res.model = PairClassifier::constant(e.label);
        res.svm_degenerate = true;
    }
    res.times.train_ms = ms_since(t0);

    if (res.svm_degenerate) {
        // no usable transfer signal: keep the consensus partition
        res.trec_partition = res.ec_partition;
        res.stop_reason = "svm_degenerate";
        return res;
    }

    t0 = Clock::now();
    const PairMatrix p_t = pair_meta_matrix(ens_t.sil);
    const Matrix target_x = meta_features(p_t, ens_t.factor, cfg.ablation);
    const std::vector<int> z_pred = predict(res.model, target_x);

    PairMatrix z_hat;
    z_hat.kind = PairKind::prediction;
    const Eigen::Index n = target.size();
    z_hat.values = Matrix::Identity(n, n);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        z_hat.values(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j, ++row)
            z_hat.values(i, j) = z_hat.values(j, i) =
                z_pred[static_cast<std::size_t>(row)] ? 1.0 : 0.0;
    }
    res.times.predict_ms = ms_since(t0);

    t0 = Clock::now();
    auto [projected, trace] =
        project_to_partition(z_hat, res.ec_partition, cfg.k_target, cfg.q_min,
                             cfg.it_max, cfg.q_min_on_squared);
    res.times.project_ms = ms_since(t0);
    res.trec_partition = std::move(projected);
    res.trace = std::move(trace);
    res.stop_reason = stop_reason_name(res.trace.stop_reason);
    return res;
}

}  // namespace trec

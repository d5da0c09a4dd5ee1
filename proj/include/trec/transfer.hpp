#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trec/dataset.hpp"
#include "trec/ensemble.hpp"
#include "trec/spectral.hpp"
#include "trec/svm.hpp"

namespace trec {

// P(i,j) = (sil_i + sil_j) / 2; symmetric, diagonal sil_i.
PairMatrix pair_meta_matrix(const Vector& sil);

// Frobenius norm of (z_star - z_hat); for Boolean inputs this equals
// sqrt(2 * number of disagreeing unordered pairs).
double objective(const PairMatrix& z_star, const PairMatrix& z_hat);

enum class StopReason { q_min, it_max, no_improving_move };

const char* stop_reason_name(StopReason r);

struct ProjectionTrace {
    struct Move {
        int point;
        int from;
        int to;
    };
    std::vector<double> objective_per_step;  // initial value, then after each move
    std::vector<Move> moves;
    StopReason stop_reason = StopReason::no_improving_move;
};

// Greedy best-improvement projection of a Boolean prediction matrix onto
// the coincidence matrices of k-cluster partitions. Each applied move
// strictly lowers the objective; moves that would empty a cluster are
// skipped. Ties break on lowest point index, then lowest cluster index.
std::pair<Partition, ProjectionTrace> project_to_partition(
    const PairMatrix& z_hat, const Partition& init, int k, double q_min,
    int it_max, bool q_min_on_squared = false);

enum class Ablation { both, coassoc_only, silhouette_only };

Ablation ablation_from_name(const std::string& name);
const char* ablation_name(Ablation a);

struct TrecConfig {
    EnsembleConfig ensemble_s;
    EnsembleConfig ensemble_t;
    SvmConfig svm;
    SpectralConfig spectral;  // k_final is overridden by k_target
    int k_target = 4;
    double q_min = 5.0;
    int it_max = 40;
    Ablation ablation = Ablation::both;
    bool q_min_on_squared = false;

    void validate() const;
};

struct StageTimes {
    double ensemble_s_ms = 0.0;
    double ensemble_t_ms = 0.0;
    double train_ms = 0.0;
    double predict_ms = 0.0;
    double spectral_ms = 0.0;
    double project_ms = 0.0;

    double total_ms() const {
        return ensemble_s_ms + ensemble_t_ms + train_ms + predict_ms + spectral_ms +
               project_ms;
    }
};

struct TrecResult {
    Partition ec_partition;    // spectral consensus on the target ensemble
    Partition trec_partition;  // after the greedy projection
    ProjectionTrace trace;
    std::string stop_reason;   // trace reason, or "svm_degenerate"
    bool svm_degenerate = false;
    PairClassifier model;
    StageTimes times;
};

// Full pipeline: ensembles on both domains, meta-feature classifier on the
// labeled source, transfer to target pairs, spectral init, projection.
// A single-class source coincidence matrix degenerates the classifier; the
// EC partition is then returned unchanged with svm_degenerate set.
TrecResult run_trec(const Dataset& source, const Dataset& target,
                    const TrecConfig& cfg);

}  // namespace trec

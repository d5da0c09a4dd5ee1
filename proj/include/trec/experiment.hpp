#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trec/eval.hpp"
#include "trec/transfer.hpp"

namespace trec {

// Defaults reproduce the reference Monte Carlo setup: 40 runs, L=10,
// 3-feature subspaces, K_T=4, SVM C=10 sigma=4, Q_min=5, It_max=40.
struct ExperimentConfig {
    std::uint64_t master_seed = 1;
    int n_runs = 40;
    int ensemble_L = 10;
    int ensemble_subspace_size = 3;
    int ensemble_k = 4;
    double svm_c = 10.0;
    double svm_sigma = 4.0;
    double q_min = 5.0;
    int it_max = 40;
    Ablation ablation = Ablation::both;
    std::string output_dir = "out";
    int workers = 0;  // 0 -> hardware concurrency

    void validate() const;
};

std::string experiment_config_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct SeedSet {
    std::uint64_t target_data = 0;
    std::uint64_t source_data = 0;
    std::uint64_t ensemble_t = 0;
    std::uint64_t ensemble_s = 0;
    std::uint64_t svm = 0;
};

// per-run seed derivation: hash(master_seed, run_id, role)
SeedSet derive_run_seeds(std::uint64_t master_seed, int run_id);

struct RunReport {
    int run_id = 0;
    SeedSet seeds;
    double ari_ec = 0.0;
    double ari_trec = 0.0;
    int moves_applied = 0;
    std::string stop_reason;
    StageTimes times;
    std::string prng;
    bool failed = false;
    std::string error;
};

std::string reports_to_json(const std::vector<RunReport>& reports);
std::vector<RunReport> reports_from_json(const std::string& text);

struct MonteCarloSummary {
    int n_runs = 0;
    int n_failed = 0;
    double mean_ari_ec = 0.0;
    double mean_ari_trec = 0.0;
    double sd_ari_ec = 0.0;
    double sd_ari_trec = 0.0;
    PairedTestResult ttest;
};

std::string summary_to_json(const MonteCarloSummary& s, const ExperimentConfig& cfg);

// the TrecConfig a given run executes (also used by single-run subcommands)
TrecConfig make_run_config(const ExperimentConfig& cfg, const SeedSet& seeds);

RunReport execute_run(const ExperimentConfig& cfg, int run_id);

// Paired EC/TrEC comparison over n_runs fresh sample pairs. Writes
// runs.csv, reports.json and summary.json into cfg.output_dir; runs may
// execute on several workers, output is byte-stable regardless.
MonteCarloSummary montecarlo(const ExperimentConfig& cfg,
                             std::vector<RunReport>* reports_out = nullptr);

}  // namespace trec

// Command-line front end: dataset generation, single EC / TrEC runs, the
// Monte Carlo comparison, and SVG figures.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "trec/dataset.hpp"
#include "trec/ensemble.hpp"
#include "trec/eval.hpp"
#include "trec/experiment.hpp"
#include "trec/plot.hpp"
#include "trec/rng.hpp"
#include "trec/spectral.hpp"
#include "trec/synth.hpp"
#include "trec/transfer.hpp"

namespace {

using namespace trec;

struct CommonOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int runs = 0;
    std::string ablation;
    int workers = 0;
    std::string out;
};

ExperimentConfig resolve_config(const CommonOpts& o) {
    ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = load_experiment_config(o.config_path);
    if (o.seed_set) cfg.master_seed = o.seed;
    if (o.runs > 0) cfg.n_runs = o.runs;
    if (!o.ablation.empty()) cfg.ablation = ablation_from_name(o.ablation);
    if (o.workers > 0) cfg.workers = o.workers;
    if (!o.out.empty()) cfg.output_dir = o.out;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON experiment config");
    cmd->add_option("--seed", o.seed, "master seed")->each([&o](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--runs", o.runs, "Monte Carlo run count");
    cmd->add_option("--ablation", o.ablation,
                    "meta-feature mode: both|coassoc_only|silhouette_only");
    cmd->add_option("--workers", o.workers, "worker thread count");
    cmd->add_option("--out", o.out, "output directory");
}

int cmd_gen(const CommonOpts& o, const std::string& which, const std::string& file,
            bool shuffle) {
    ExperimentConfig cfg = resolve_config(o);
    GaussStripModel model;
    if (which == "target")
        model = target_model();
    else if (which == "source")
        model = source_model();
    else
        throw std::invalid_argument("gen: --model must be target or source");
    Dataset data = sample(model, cfg.master_seed);
    if (shuffle) shuffle_rows(data, derive_seed(cfg.master_seed, 0, "shuffle"));
    save_csv(data, file);
    std::cout << "wrote " << data.size() << "x" << data.dim() << " dataset to " << file
              << "\n";
    return 0;
}

int cmd_run_ec(const CommonOpts& o, const std::string& data_path, bool has_labels,
               const std::string& out_file) {
    ExperimentConfig cfg = resolve_config(o);
    Dataset data = load_csv(data_path, has_labels);
    std::vector<int> truth = data.labels;
    data.labels.clear();

    SeedSet seeds = derive_run_seeds(cfg.master_seed, 0);
    TrecConfig tc = make_run_config(cfg, seeds);
    EnsembleResult ens = build_ensemble(data, tc.ensemble_t);
    SpectralConfig sc = tc.spectral;
    sc.k_final = tc.k_target;
    Partition part = spectral_consensus(ens.factor, sc);
    save_partition_csv(part, out_file);
    if (!truth.empty())
        std::printf("ARI vs labels: %.4f\n", ari(part.assign, truth).value);
    std::cout << "wrote partition to " << out_file << "\n";
    return 0;
}

int cmd_run_trec(const CommonOpts& o, const std::string& source_path,
                 const std::string& target_path, bool target_has_labels,
                 const std::string& dump_model_path) {
    ExperimentConfig cfg = resolve_config(o);
    Dataset source = load_csv(source_path, true);
    Dataset target = load_csv(target_path, target_has_labels);
    std::vector<int> truth = target.labels;
    target.labels.clear();

    SeedSet seeds = derive_run_seeds(cfg.master_seed, 0);
    TrecResult run = run_trec(source, target, make_run_config(cfg, seeds));

    std::filesystem::create_directories(cfg.output_dir);
    const std::filesystem::path dir(cfg.output_dir);
    save_partition_csv(run.trec_partition, (dir / "partition.csv").string());
    save_partition_csv(run.ec_partition, (dir / "partition_ec.csv").string());
    if (!dump_model_path.empty()) save_model(run.model, dump_model_path);

    RunReport report;
    report.run_id = 0;
    report.seeds = seeds;
    report.prng = kPrngId;
    report.moves_applied = static_cast<int>(run.trace.moves.size());
    report.stop_reason = run.stop_reason;
    report.times = run.times;
    if (!truth.empty()) {
        report.ari_ec = ari(run.ec_partition.assign, truth).value;
        report.ari_trec = ari(run.trec_partition.assign, truth).value;
        std::printf("ARI EC:   %.4f\nARI TrEC: %.4f\n", report.ari_ec, report.ari_trec);
    }
    std::ofstream rep(dir / "report.json");
    rep << reports_to_json({report});
    std::cout << "wrote partition.csv, partition_ec.csv, report.json to "
              << cfg.output_dir << "\n";
    return 0;
}

int cmd_montecarlo(const CommonOpts& o) {
    ExperimentConfig cfg = resolve_config(o);
    MonteCarloSummary s = montecarlo(cfg);
    std::printf("runs: %d (failed %d)\n", s.n_runs, s.n_failed);
    std::printf("mean ARI EC:   %.4f (sd %.4f)\n", s.mean_ari_ec, s.sd_ari_ec);
    std::printf("mean ARI TrEC: %.4f (sd %.4f)\n", s.mean_ari_trec, s.sd_ari_trec);
    std::printf("paired t-test: t=%.4f dof=%d p=%.6g\n", s.ttest.t_stat, s.ttest.dof,
                s.ttest.p_value);
    std::cout << "outputs in " << cfg.output_dir << "\n";
    return 0;
}

int cmd_plot_scatter(const std::string& data_path, bool has_labels,
                     std::pair<int, int> dims, const std::string& out_file) {
    Dataset data = load_csv(data_path, has_labels);
    plot_scatter(data, dims.first, dims.second, out_file);
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

// Boundary figure for a seeded default run: train on fresh source meta-
// features and draw the regions with the training pairs.
int cmd_plot_boundary(const CommonOpts& o, const std::string& out_file) {
    ExperimentConfig cfg = resolve_config(o);
    SeedSet seeds = derive_run_seeds(cfg.master_seed, 0);
    Dataset source = sample(source_model(), seeds.source_data);
    Dataset target = sample(target_model(), seeds.target_data);
    target.labels.clear();

    TrecConfig tc = make_run_config(cfg, seeds);
    TrecResult run = run_trec(source, target, tc);

    EnsembleResult ens = build_ensemble(source, tc.ensemble_s);
    PairMatrix p = pair_meta_matrix(ens.sil);
    PairMatrix z = coincidence_from_labels(source.labels);
    const Eigen::Index n = source.size();
    Matrix pairs(n * (n - 1) / 2, 2);
    std::vector<int> labels;
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j, ++row) {
            pairs(row, 0) = p.values(i, j);
            pairs(row, 1) = ens.factor.entry(i, j);
            labels.push_back(z.values(i, j) != 0.0 ? 1 : 0);
        }
    plot_boundary(run.model, pairs, labels, out_file);
    std::cout << "wrote " << out_file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"transfer ensemble clustering toolkit"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* gen = app.add_subcommand("gen", "sample a synthetic dataset to CSV");
    std::string gen_model = "target", gen_out = "data.csv";
    bool gen_shuffle = false;
    add_common(gen, common);
    gen->add_option("--model", gen_model, "target|source");
    gen->add_option("--file", gen_out, "output CSV path");
    gen->add_flag("--shuffle", gen_shuffle, "shuffle row order");

    auto* ec = app.add_subcommand("run-ec", "ensemble clustering consensus");
    std::string ec_data, ec_out = "partition.csv";
    bool ec_labels = false;
    add_common(ec, common);
    ec->add_option("--data", ec_data, "input CSV")->required();
    ec->add_flag("--has-labels", ec_labels, "last column is a 1-based label");
    ec->add_option("--file", ec_out, "output partition CSV");

    auto* tr = app.add_subcommand("run-trec", "transfer ensemble clustering");
    std::string tr_source, tr_target, tr_dump;
    bool tr_labels = false;
    add_common(tr, common);
    tr->add_option("--source", tr_source, "labeled source CSV")->required();
    tr->add_option("--target", tr_target, "target CSV")->required();
    tr->add_flag("--target-has-labels", tr_labels,
                 "target CSV carries ground truth for scoring");
    tr->add_option("--dump-model", tr_dump, "write the pair classifier as text");

    auto* mc = app.add_subcommand("montecarlo", "paired EC/TrEC comparison");
    add_common(mc, common);

    auto* plot = app.add_subcommand("plot", "SVG figures");
    plot->require_subcommand(1);
    auto* ps = plot->add_subcommand("scatter", "dataset scatter");
    std::string ps_data, ps_out = "scatter.svg";
    bool ps_labels = false;
    std::vector<int> ps_dims{0, 1};
    ps->add_option("--data", ps_data, "input CSV")->required();
    ps->add_flag("--has-labels", ps_labels, "last column is a 1-based label");
    ps->add_option("--dims", ps_dims, "two feature indices")->expected(2);
    ps->add_option("--file", ps_out, "output SVG path");
    auto* pb = plot->add_subcommand("boundary", "pair-classifier decision regions");
    std::string pb_out = "boundary.svg";
    add_common(pb, common);
    pb->add_option("--file", pb_out, "output SVG path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(common, gen_model, gen_out, gen_shuffle);
        if (ec->parsed()) return cmd_run_ec(common, ec_data, ec_labels, ec_out);
        if (tr->parsed())
            return cmd_run_trec(common, tr_source, tr_target, tr_labels, tr_dump);
        if (mc->parsed()) return cmd_montecarlo(common);
        if (plot->parsed()) {
            if (ps->parsed())
                return cmd_plot_scatter(ps_data, ps_labels, {ps_dims[0], ps_dims[1]},
                                        ps_out);
            if (pb->parsed()) return cmd_plot_boundary(common, pb_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include "trec/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "trec/rng.hpp"
#include "trec/synth.hpp"

namespace trec {

using nlohmann::json;

void ExperimentConfig::validate() const {
    if (n_runs < 1) throw std::invalid_argument("experiment: n_runs < 1");
    if (ensemble_L < 1) throw std::invalid_argument("experiment: L < 1");
    if (ensemble_subspace_size < 1)
        throw std::invalid_argument("experiment: subspace_size < 1");
    if (ensemble_k < 2) throw std::invalid_argument("experiment: k < 2");
    if (svm_c <= 0.0 || svm_sigma <= 0.0)
        throw std::invalid_argument("experiment: svm parameters must be positive");
    if (q_min < 0.0) throw std::invalid_argument("experiment: q_min < 0");
    if (it_max < 0) throw std::invalid_argument("experiment: it_max < 0");
    if (workers < 0) throw std::invalid_argument("experiment: workers < 0");
}

std::string experiment_config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["master_seed"] = cfg.master_seed;
    j["n_runs"] = cfg.n_runs;
    j["ensemble"] = {{"L", cfg.ensemble_L},
                     {"subspace_size", cfg.ensemble_subspace_size},
                     {"k", cfg.ensemble_k}};
    j["svm"] = {{"C", cfg.svm_c}, {"sigma", cfg.svm_sigma}};
    j["q_min"] = cfg.q_min;
    j["it_max"] = cfg.it_max;
    j["ablation"] = ablation_name(cfg.ablation);
    j["output_dir"] = cfg.output_dir;
    return j.dump(2) + "\n";
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig cfg;
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("n_runs")) cfg.n_runs = j["n_runs"].get<int>();
    if (j.contains("ensemble")) {
        const auto& e = j["ensemble"];
        if (e.contains("L")) cfg.ensemble_L = e["L"].get<int>();
        if (e.contains("subspace_size"))
            cfg.ensemble_subspace_size = e["subspace_size"].get<int>();
        if (e.contains("k")) cfg.ensemble_k = e["k"].get<int>();
    }
    if (j.contains("svm")) {
        const auto& s = j["svm"];
        if (s.contains("C")) cfg.svm_c = s["C"].get<double>();
        if (s.contains("sigma")) cfg.svm_sigma = s["sigma"].get<double>();
    }
    if (j.contains("q_min")) cfg.q_min = j["q_min"].get<double>();
    if (j.contains("it_max")) cfg.it_max = j["it_max"].get<int>();
    if (j.contains("ablation")) cfg.ablation = ablation_from_name(j["ablation"]);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    cfg.validate();
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return experiment_config_from_json(buf.str());
}

SeedSet derive_run_seeds(std::uint64_t master_seed, int run_id) {
    const std::uint64_t run = static_cast<std::uint64_t>(run_id);
    SeedSet s;
    s.target_data = derive_seed(master_seed, run, "target-data");
    s.source_data = derive_seed(master_seed, run, "source-data");
    s.ensemble_t = derive_seed(master_seed, run, "ensemble-T");
    s.ensemble_s = derive_seed(master_seed, run, "ensemble-S");
    s.svm = derive_seed(master_seed, run, "svm");
    return s;
}

namespace {

json seeds_to_json(const SeedSet& s) {
    return json{{"target-data", s.target_data},
                {"source-data", s.source_data},
                {"ensemble-T", s.ensemble_t},
                {"ensemble-S", s.ensemble_s},
                {"svm", s.svm}};
}

SeedSet seeds_from_json(const json& j) {
    SeedSet s;
    s.target_data = j.at("target-data").get<std::uint64_t>();
    s.source_data = j.at("source-data").get<std::uint64_t>();
    s.ensemble_t = j.at("ensemble-T").get<std::uint64_t>();
    s.ensemble_s = j.at("ensemble-S").get<std::uint64_t>();
    s.svm = j.at("svm").get<std::uint64_t>();
    return s;
}

json report_to_json(const RunReport& r) {
    json j;
    j["run_id"] = r.run_id;
    j["seeds"] = seeds_to_json(r.seeds);
    j["ari_ec"] = r.ari_ec;
    j["ari_trec"] = r.ari_trec;
    j["moves_applied"] = r.moves_applied;
    j["stop_reason"] = r.stop_reason;
    j["times_ms"] = {{"ensemble_s", r.times.ensemble_s_ms},
                     {"ensemble_t", r.times.ensemble_t_ms},
                     {"train", r.times.train_ms},
                     {"predict", r.times.predict_ms},
                     {"spectral", r.times.spectral_ms},
                     {"project", r.times.project_ms}};
    j["prng"] = r.prng;
    j["failed"] = r.failed;
    j["error"] = r.error;
    return j;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    r.run_id = j.at("run_id").get<int>();
    r.seeds = seeds_from_json(j.at("seeds"));
    r.ari_ec = j.at("ari_ec").get<double>();
    r.ari_trec = j.at("ari_trec").get<double>();
    r.moves_applied = j.at("moves_applied").get<int>();
    r.stop_reason = j.at("stop_reason").get<std::string>();
    const auto& t = j.at("times_ms");
    r.times.ensemble_s_ms = t.at("ensemble_s").get<double>();
    r.times.ensemble_t_ms = t.at("ensemble_t").get<double>();
    r.times.train_ms = t.at("train").get<double>();
    r.times.predict_ms = t.at("predict").get<double>();
    r.times.spectral_ms = t.at("spectral").get<double>();
    r.times.project_ms = t.at("project").get<double>();
    r.prng = j.at("prng").get<std::string>();
    r.failed = j.at("failed").get<bool>();
    r.error = j.at("error").get<std::string>();
    return r;
}

}  // namespace

std::string reports_to_json(const std::vector<RunReport>& reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return arr.dump(2) + "\n";
}

std::vector<RunReport> reports_from_json(const std::string& text) {
    json arr = json::parse(text);
    std::vector<RunReport> out;
    for (const auto& j : arr) out.push_back(report_from_json(j));
    return out;
}

TrecConfig make_run_config(const ExperimentConfig& cfg, const SeedSet& seeds) {
    TrecConfig tc;
    tc.ensemble_s.runs = cfg.ensemble_L;
    tc.ensemble_s.k_per_run = cfg.ensemble_k;
    tc.ensemble_s.subspace_size = cfg.ensemble_subspace_size;
    tc.ensemble_s.seed = seeds.ensemble_s;
    tc.ensemble_t = tc.ensemble_s;
    tc.ensemble_t.seed = seeds.ensemble_t;
    tc.svm.c = cfg.svm_c;
    tc.svm.sigma = cfg.svm_sigma;
    tc.svm.seed = seeds.svm;
    tc.spectral.k_final = cfg.ensemble_k;
    tc.spectral.seed = derive_seed(seeds.ensemble_t, 0, "spectral");
    tc.k_target = cfg.ensemble_k;
    tc.q_min = cfg.q_min;
    tc.it_max = cfg.it_max;
    tc.ablation = cfg.ablation;
    return tc;
}

RunReport execute_run(const ExperimentConfig& cfg, int run_id) {
    RunReport report;
    report.run_id = run_id;
    report.seeds = derive_run_seeds(cfg.master_seed, run_id);
    report.prng = kPrngId;
    try {
        Dataset target = sample(target_model(), report.seeds.target_data);
        Dataset source = sample(source_model(), report.seeds.source_data);
        const std::vector<int> truth = target.labels;
        target.labels.clear();  // the pipeline never sees target labels

        TrecResult run = run_trec(source, target, make_run_config(cfg, report.seeds));
        report.ari_ec = ari(run.ec_partition.assign, truth).value;
        report.ari_trec = ari(run.trec_partition.assign, truth).value;
        report.moves_applied = static_cast<int>(run.trace.moves.size());
        report.stop_reason = run.stop_reason;
        report.times = run.times;
    } catch (const std::exception& e) {
        report.failed = true;
        report.error = e.what();
    }
    return report;
}

namespace {

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

void write_runs_csv(const std::vector<RunReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("montecarlo: cannot write " + path);
    out << "run_id,ari_ec,ari_trec,moves_applied,stop_reason\n";
    char buf[96];
    for (const auto& r : reports) {
        if (r.failed) {
            out << r.run_id << ",error,error,0,failed\n";
            continue;
        }
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%d,%s\n", r.run_id, r.ari_ec,
                      r.ari_trec, r.moves_applied, r.stop_reason.c_str());
        out << buf;
    }
}

}  // namespace

std::string summary_to_json(const MonteCarloSummary& s, const ExperimentConfig& cfg) {
    json j;
    j["n_runs"] = s.n_runs;
    j["n_failed"] = s.n_failed;
    j["mean_ari_ec"] = s.mean_ari_ec;
    j["mean_ari_trec"] = s.mean_ari_trec;
    j["sd_ari_ec"] = s.sd_ari_ec;
    j["sd_ari_trec"] = s.sd_ari_trec;
    j["paired_t_test"] = {{"t_stat", s.ttest.t_stat},
                          {"dof", s.ttest.dof},
                          {"p_value", s.ttest.p_value},
                          {"mean_diff", s.ttest.mean_diff}};
    j["prng"] = kPrngId;
    j["config"] = json::parse(experiment_config_to_json(cfg));
    return j.dump(2) + "\n";
}

MonteCarloSummary montecarlo(const ExperimentConfig& cfg,
                             std::vector<RunReport>* reports_out) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output_dir);

    std::vector<RunReport> reports(cfg.n_runs);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers =
        std::min(cfg.n_runs, cfg.workers > 0 ? cfg.workers : static_cast<int>(hw));

    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            int id = next.fetch_add(1);
            if (id >= cfg.n_runs) return;
            reports[id] = execute_run(cfg, id);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<double> ec, tr;
    int failed = 0;
    for (const auto& r : reports) {
        if (r.failed) {
            ++failed;
            continue;
        }
        ec.push_back(r.ari_ec);
        tr.push_back(r.ari_trec);
    }
    if (ec.empty()) throw std::runtime_error("montecarlo: every run failed");

    MonteCarloSummary s;
    s.n_runs = cfg.n_runs;
    s.n_failed = failed;
    s.mean_ari_ec = mean_of(ec);
    s.mean_ari_trec = mean_of(tr);
    s.sd_ari_ec = sd_of(ec, s.mean_ari_ec);
    s.sd_ari_trec = sd_of(tr, s.mean_ari_trec);
    s.ttest = paired_t_test(tr, ec);

    const std::filesystem::path dir(cfg.output_dir);
    write_runs_csv(reports, (dir / "runs.csv").string());
    {
        std::ofstream out(dir / "reports.json");
        if (!out) throw std::runtime_error("montecarlo: cannot write reports.json");
        out << reports_to_json(reports);
    }
    {
        std::ofstream out(dir / "summary.json");
        if (!out) throw std::runtime_error("montecarlo: cannot write summary.json");
        out << summary_to_json(s, cfg);
    }
    if (reports_out) *reports_out = std::move(reports);
    return s;
}

}  // namespace trec

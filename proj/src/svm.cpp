#include "trec/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "trec/rng.hpp"

namespace trec {

void SvmConfig::validate() const {
    if (c <= 0.0) throw std::invalid_argument("svm: C <= 0");
    if (sigma <= 0.0) throw std::invalid_argument("svm: sigma <= 0");
    if (tol <= 0.0) throw std::invalid_argument("svm: tol <= 0");
    if (max_passes < 1) throw std::invalid_argument("svm: max_passes < 1");
    if (max_train_pairs < 2) throw std::invalid_argument("svm: max_train_pairs < 2");
}

double rbf_kernel(double ax, double ay, double bx, double by, double sigma,
                  bool gamma_convention) {
    const double dx = ax - bx;
    const double dy = ay - by;
    const double denom = gamma_convention ? sigma * sigma : 2.0 * sigma * sigma;
    return std::exp(-(dx * dx + dy * dy) / denom);
}

PairClassifier PairClassifier::constant(int cls) {
    PairClassifier m;
    m.bias = cls == 1 ? 1.0 : -1.0;
    return m;
}

double PairClassifier::decision(double p, double h) const {
    double f = bias;
    for (std::size_t s = 0; s < alphas.size(); ++s)
        f += alphas[s] * sv_labels[s] *
             rbf_kernel(support_vectors(static_cast<Eigen::Index>(s), 0),
                        support_vectors(static_cast<Eigen::Index>(s), 1), p, h, sigma,
                        gamma_convention);
    return f;
}

namespace {

// Platt-style SMO working state over one training set.
struct Smo {
    const Matrix& x;
    const std::vector<int>& y;  // -1 / +1
    const SvmConfig& cfg;
    std::vector<double> alpha;
    std::vector<double> err;  // f(x_i) - y_i, maintained for every point
    double b = 0.0;
    Rng rng;

    Smo(const Matrix& features, const std::vector<int>& labels, const SvmConfig& config)
        : x(features),
          y(labels),
          cfg(config),
          alpha(labels.size(), 0.0),
          err(labels.size()),
          rng(derive_seed(config.seed, 0, "smo")) {
        for (std::size_t i = 0; i < labels.size(); ++i) err[i] = -labels[i];
    }

    std::size_t size() const { return alpha.size(); }

    double kernel(std::size_t i, std::size_t j) const {
        return rbf_kernel(x(static_cast<Eigen::Index>(i), 0),
                          x(static_cast<Eigen::Index>(i), 1),
                          x(static_cast<Eigen::Index>(j), 0),
                          x(static_cast<Eigen::Index>(j), 1), cfg.sigma,
                          cfg.gamma_convention);
    }

    bool non_bound(std::size_t i) const {
        return alpha[i] > 0.0 && alpha[i] < cfg.c;
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double a1 = alpha[i1], a2 = alpha[i2];
        const double y1 = y[i1], y2 = y[i2];
        const double e1 = err[i1], e2 = err[i2];
        const double s = y1 * y2;
        const double c = cfg.c;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(c, c + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - c);
            hi = std::min(c, a1 + a2);
        }
        if (lo >= hi) return false;

        const double k11 = kernel(i1, i1);
        const double k12 = kernel(i1, i2);
        const double k22 = kernel(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = a2 + y2 * (e1 - e2) / eta;
            a2_new = std::clamp(a2_new, lo, hi);
        } else {
            // flat direction: evaluate the objective at both clip ends
            const double f1 = y1 * e1 - a1 * k11 - s * a2 * k12;
            const double f2 = y2 * e2 - a2 * k22 - s * a1 * k12;
            const double l1 = a1 + s * (a2 - lo);
            const double h1 = a1 + s * (a2 - hi);
            const double psi_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                                  0.5 * lo * lo * k22 + s * lo * l1 * k12;
            const double psi_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                                  0.5 * hi * hi * k22 + s * hi * h1 * k12;
            if (psi_lo < psi_hi - 1e-12)
                a2_new = lo;
            else if (psi_lo > psi_hi + 1e-12)
                a2_new = hi;
            else
                return false;
        }
        if (std::fabs(a2_new - a2) < 1e-10 * (a2_new + a2 + 1e-10)) return false;

        const double a1_new = a1 + s * (a2 - a2_new);
        const double da1 = a1_new - a1;
        const double da2 = a2_new - a2;

        const double b1 = b - e1 - y1 * da1 * k11 - y2 * da2 * k12;
        const double b2 = b - e2 - y1 * da1 * k12 - y2 * da2 * k22;
        double b_new;
        if (a1_new > 0.0 && a1_new < c)
            b_new = b1;
        else if (a2_new > 0.0 && a2_new < c)
            b_new = b2;
        else
            b_new = 0.5 * (b1 + b2);
        const double db = b_new - b;

        alpha[i1] = a1_new;
        alpha[i2] = a2_new;
        b = b_new;
        for (std::size_t j = 0; j < size(); ++j)
            err[j] += y1 * da1 * kernel(i1, j) + y2 * da2 * kernel(i2, j) + db;
        return true;
    }

    bool examine(std::size_t i2) {
        const double y2 = y[i2];
        const double e2 = err[i2];
        const double r2 = e2 * y2;
        if (!((r2 < -cfg.tol && alpha[i2] < cfg.c) || (r2 > cfg.tol && alpha[i2] > 0.0)))
            return false;

        // best |E1 - E2| over non-bound points
        std::size_t best = size();
        double best_gap = 0.0;
        for (std::size_t i = 0; i < size(); ++i) {
            if (!non_bound(i)) continue;
            double gap = std::fabs(err[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < size() && take_step(best, i2)) return true;

        std::size_t offset = static_cast<std::size_t>(rng.below(size()));
        for (std::size_t t = 0; t < size(); ++t) {
            std::size_t i = (t + offset) % size();
            if (non_bound(i) && take_step(i, i2)) return true;
        }
        offset = static_cast<std::size_t>(rng.below(size()));
        for (std::size_t t = 0; t < size(); ++t) {
            std::size_t i = (t + offset) % size();
            if (!non_bound(i) && take_step(i, i2)) return true;
        }
        return false;
    }

    void solve() {
        bool examine_all = true;
        int changed = 0;
        int sweeps = 0;
        while ((changed > 0 || examine_all) && sweeps < cfg.max_passes) {
            changed = 0;
            if (examine_all) {
                for (std::size_t i = 0; i < size(); ++i) changed += examine(i);
            } else {
                for (std::size_t i = 0; i < size(); ++i)
                    if (non_bound(i)) changed += examine(i);
            }
            ++sweeps;
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
    }
};

// stratified seeded subsample keeping the class balance
std::vector<std::size_t> subsample_indices(const std::vector<int>& targets,
                                           std::size_t cap, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < targets.size(); ++i)
        (targets[i] == 1 ? pos : neg).push_back(i);

    const double frac = static_cast<double>(cap) / static_cast<double>(targets.size());
    std::size_t n_pos = std::min(pos.size(), static_cast<std::size_t>(
                                                 std::floor(frac * pos.size())));
    std::size_t n_neg = std::min(neg.size(), cap - n_pos);
    n_pos = std::min(pos.size(), cap - n_neg);

    Rng rng(derive_seed(seed, 0, "svm-subsample"));
    auto draw = [&rng](std::vector<std::size_t>& from, std::size_t count) {
        for (std::size_t t = 0; t < count; ++t) {
            std::size_t pick = t + static_cast<std::size_t>(rng.below(from.size() - t));
            std::swap(from[t], from[pick]);
        }
        from.resize(count);
    };
    draw(pos, n_pos);
    draw(neg, n_neg);

    std::vector<std::size_t> keep;
    keep.reserve(n_pos + n_neg);
    keep.insert(keep.end(), pos.begin(), pos.end());
    keep.insert(keep.end(), neg.begin(), neg.end());
    std::sort(keep.begin(), keep.end());
    return keep;
}

}  // namespace

PairClassifier train(const Matrix& features, const std::vector<int>& targets,
                     const SvmConfig& cfg) {
    cfg.validate();
    if (features.cols() != 2) throw std::invalid_argument("svm: features must be M x 2");
    if (features.rows() != static_cast<Eigen::Index>(targets.size()))
        throw std::invalid_argument("svm: row/target count mismatch");
    if (targets.size() < 2) throw std::invalid_argument("svm: need at least 2 pairs");
    if (!features.allFinite()) throw std::invalid_argument("svm: non-finite feature");

    bool has0 = false, has1 = false;
    for (int t : targets) {
        if (t == 0) has0 = true;
        else if (t == 1) has1 = true;
        else throw std::invalid_argument("svm: target outside {0,1}");
    }
    if (!has0 || !has1) throw SingleClassError(has1 ? 1 : 0);

    Matrix x = features;
    std::vector<int> t01 = targets;
    if (t01.size() > cfg.max_train_pairs) {
        auto keep = subsample_indices(t01, cfg.max_train_pairs, cfg.seed);
        Matrix xs(static_cast<Eigen::Index>(keep.size()), 2);
        std::vector<int> ts(keep.size());
        for (std::size_t r = 0; r < keep.size(); ++r) {
            xs.row(static_cast<Eigen::Index>(r)) =
                x.row(static_cast<Eigen::Index>(keep[r]));
            ts[r] = t01[keep[r]];
        }
        x = std::move(xs);
        t01 = std::move(ts);
    }

    std::vector<int> y(t01.size());
    for (std::size_t i = 0; i < t01.size(); ++i) y[i] = t01[i] == 1 ? 1 : -1;

    Smo smo(x, y, cfg);
    smo.solve();

    PairClassifier model;
    model.sigma = cfg.sigma;
    model.gamma_convention = cfg.gamma_convention;
    model.bias = smo.b;
    std::vector<Eigen::Index> sv;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (smo.alpha[i] > 0.0) sv.push_back(static_cast<Eigen::Index>(i));
    model.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), 2);
    for (std::size_t s = 0; s < sv.size(); ++s) {
        model.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(sv[s]);
        model.alphas.push_back(smo.alpha[static_cast<std::size_t>(sv[s])]);
        model.sv_labels.push_back(y[static_cast<std::size_t>(sv[s])]);
        model.sv_index.push_back(static_cast<int>(sv[s]));
    }
    return model;
}

std::vector<int> predict(const PairClassifier& model, const Matrix& features) {
    if (features.cols() != 2) throw std::invalid_argument("svm: features must be M x 2");
    std::vector<int> out(static_cast<std::size_t>(features.rows()));
    for (Eigen::Index i = 0; i < features.rows(); ++i)
        out[static_cast<std::size_t>(i)] =
            model.decision(features(i, 0), features(i, 1)) >= 0.0 ? 1 : 0;
    return out;
}

void save_model(const PairClassifier& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("svm: cannot write " + path);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "rbf sigma %.17g bias %.17g gamma_convention %d\n",
                  model.sigma, model.bias, model.gamma_convention ? 1 : 0);
    out << buf << model.alphas.size() << '\n';
    for (std::size_t s = 0; s < model.alphas.size(); ++s) {
        std::snprintf(buf, sizeof(buf), "%.17g %d %.17g %.17g\n", model.alphas[s],
                      model.sv_labels[s], model.support_vectors(static_cast<Eigen::Index>(s), 0),
                      model.support_vectors(static_cast<Eigen::Index>(s), 1));
        out << buf;
    }
}

PairClassifier load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("svm: cannot open " + path);
    PairClassifier model;
    std::string kind, key;
    int gamma_conv = 0;
    in >> kind >> key >> model.sigma >> key >> model.bias >> key >> gamma_conv;
    if (kind != "rbf") throw std::runtime_error("svm: unknown model format");
    model.gamma_convention = gamma_conv != 0;
    std::size_t count = 0;
    in >> count;
    model.support_vectors.resize(static_cast<Eigen::Index>(count), 2);
    model.alphas.resize(count);
    model.sv_labels.resize(count);
    for (std::size_t s = 0; s < count; ++s) {
        in >> model.alphas[s] >> model.sv_labels[s] >>
            model.support_vectors(static_cast<Eigen::Index>(s), 0) >>
            model.support_vectors(static_cast<Eigen::Index>(s), 1);
    }
    if (!in) throw std::runtime_error("svm: truncated model file");
    return model;
}

}  // namespace trec

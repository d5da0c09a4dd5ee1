#include "trec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace trec {

namespace {

// dense relabeling so arbitrary int ids index a contingency table
std::vector<int> densify(const std::vector<int>& labels, int& k_out) {
    std::map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.emplace(labels[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    k_out = static_cast<int>(remap.size());
    return out;
}

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

// equal as set partitions <=> the contingency table is a (partial) permutation
bool same_set_partition(const std::vector<std::vector<std::int64_t>>& table) {
    for (const auto& row : table) {
        int nonzero = 0;
        for (auto v : row) nonzero += v != 0;
        if (nonzero != 1) return false;
    }
    std::vector<std::int64_t> col(table.empty() ? 0 : table[0].size(), 0);
    for (const auto& row : table)
        for (std::size_t j = 0; j < row.size(); ++j) col[j] += row[j] != 0;
    for (auto c : col)
        if (c != 1) return false;
    return true;
}

}  // namespace

AriScore ari(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("ari: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("ari: need at least 2 objects");

    int ka = 0, kb = 0;
    std::vector<int> da = densify(a, ka);
    std::vector<int> db = densify(b, kb);

    std::vector<std::vector<std::int64_t>> table(
        ka, std::vector<std::int64_t>(kb, 0));
    for (std::size_t i = 0; i < da.size(); ++i) ++table[da[i]][db[i]];

    std::int64_t sum_cells = 0, sum_a = 0, sum_b = 0;
    std::vector<std::int64_t> row_sum(ka, 0), col_sum(kb, 0);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < kb; ++j) {
            sum_cells += choose2(table[i][j]);
            row_sum[i] += table[i][j];
            col_sum[j] += table[i][j];
        }
    for (auto r : row_sum) sum_a += choose2(r);
    for (auto c : col_sum) sum_b += choose2(c);
    const std::int64_t total = choose2(static_cast<std::int64_t>(a.size()));

    // ARI = (sum_cells - sum_a*sum_b/total) / ((sum_a+sum_b)/2 - sum_a*sum_b/total),
    // cleared of denominators: everything below is an exact integer.
    const std::int64_t num = 2 * total * sum_cells - 2 * sum_a * sum_b;
    const std::int64_t den = total * (sum_a + sum_b) - 2 * sum_a * sum_b;
    if (den == 0)
        return {same_set_partition(table) ? 1.0 : 0.0};
    return {static_cast<double>(num) / static_cast<double>(den)};
}

AriScore ari(const Partition& a, const Partition& b) { return ari(a.assign, b.assign); }

AriScore ari(const Partition& a, const std::vector<int>& labels) {
    return ari(a.assign, labels);
}

namespace {

// Lentz continued fraction for the incomplete beta; textbook form.
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double eps = 1e-15;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double f = d;
    for (int m = 1; m <= 500; ++m) {
        double m2 = 2.0 * m;
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        f *= c * d;
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = c * d;
        f *= delta;
        if (std::fabs(delta - 1.0) < eps) break;
    }
    return f;
}

}  // namespace

double reg_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete beta: a,b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(ln_front) * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int dof) {
    if (dof < 1) throw std::invalid_argument("t cdf: dof < 1");
    const double v = static_cast<double>(dof);
    const double x = v / (v + t * t);
    const double half_tail = 0.5 * reg_incomplete_beta(0.5 * v, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

PairedTestResult paired_t_test(const std::vector<double>& x,
                               const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("t-test: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("t-test: need n >= 2");

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += x[i] - y[i];
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = (x[i] - y[i]) - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    PairedTestResult res;
    res.dof = static_cast<int>(n) - 1;
    res.mean_diff = mean;
    if (sd == 0.0) {
        if (mean != 0.0)
            throw std::runtime_error("t-test: zero-variance nonzero-mean differences");
        res.t_stat = 0.0;
        res.p_value = 1.0;
        return res;
    }
    res.t_stat = mean / (sd / std::sqrt(static_cast<double>(n)));
    const double v = static_cast<double>(res.dof);
    res.p_value = reg_incomplete_beta(0.5 * v, 0.5, v / (v + res.t_stat * res.t_stat));
    return res;
}

}  // namespace trec

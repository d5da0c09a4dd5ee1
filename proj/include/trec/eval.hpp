#pragma once

#include <vector>

#include "trec/dataset.hpp"

namespace trec {

struct AriScore {
    double value = 0.0;
};

// Hubert-Arabie adjusted Rand index on two labelings of the same objects.
// All pair counts are accumulated in integers, so clean rationals come out
// exact (e.g. [1,1,2,2] vs [1,2,1,2] is exactly -0.5). When the chance
// correction degenerates (max == expected) the value is 1 for partitions
// identical as set partitions, else 0.
AriScore ari(const std::vector<int>& a, const std::vector<int>& b);
AriScore ari(const Partition& a, const Partition& b);
AriScore ari(const Partition& a, const std::vector<int>& labels);

struct PairedTestResult {
    double t_stat = 0.0;
    int dof = 0;
    double p_value = 1.0;
    double mean_diff = 0.0;
};

// Two-sided paired Student's t-test on per-run pairs. Zero-variance
// differences give p=1 when the mean is also zero and throw otherwise.
PairedTestResult paired_t_test(const std::vector<double>& x,
                               const std::vector<double>& y);

// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double reg_incomplete_beta(double a, double b, double x);

// Student's t cumulative distribution, dof >= 1.
double student_t_cdf(double t, int dof);

}  // namespace trec

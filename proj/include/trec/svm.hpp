#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "trec/dataset.hpp"

namespace trec {

struct SvmConfig {
    double c = 10.0;       // box penalty
    double sigma = 4.0;    // RBF width
    double tol = 1e-3;     // KKT tolerance
    int max_passes = 2000; // cap on SMO sweeps
    std::size_t max_train_pairs = 20000;  // stratified subsample beyond this
    std::uint64_t seed = 0;
    // false: k = exp(-r^2 / (2 sigma^2)); true: k = exp(-r^2 / sigma^2)
    bool gamma_convention = false;

    void validate() const;
};

// thrown when the training targets hold a single class
struct SingleClassError : std::runtime_error {
    int label;  // the one class present, in {0,1}
    explicit SingleClassError(int cls)
        : std::runtime_error("svm: single-class training targets"), label(cls) {}
};

// RBF-kernel decision function over 2-d meta-feature pairs.
struct PairClassifier {
    Matrix support_vectors;       // S x 2
    std::vector<double> alphas;   // dual coefficients, 0 < alpha <= C
    std::vector<int> sv_labels;   // +/-1 per support vector
    std::vector<int> sv_index;    // row in the training matrix (post-subsample)
    double bias = 0.0;
    double sigma = 4.0;
    bool gamma_convention = false;

    // classifier that ignores the input and always answers cls
    static PairClassifier constant(int cls);

    double decision(double p, double h) const;
};

double rbf_kernel(double ax, double ay, double bx, double by, double sigma,
                  bool gamma_convention);

// SMO on features (M x 2) with {0,1} targets. Targets map to -1/+1
// internally. Throws SingleClassError when only one class is present.
PairClassifier train(const Matrix& features, const std::vector<int>& targets,
                     const SvmConfig& cfg);

// {0,1} predictions; a decision value of exactly zero maps to 1.
std::vector<int> predict(const PairClassifier& model, const Matrix& features);

// plain-text model dump for the boundary plot; exact round trip
void save_model(const PairClassifier& model, const std::string& path);
PairClassifier load_model(const std::string& path);

}  // namespace trec

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Feature matrix with optional class labels. Labels are 0-based in memory;
// files carry them 1-based (conversion happens only at the CSV boundary).
struct Dataset {
    Matrix features;           // N x d
    std::vector<int> labels;   // empty when unlabeled
    std::string name;

    Eigen::Index size() const { return features.rows(); }
    Eigen::Index dim() const { return features.cols(); }
    bool has_labels() const { return !labels.empty(); }
    int num_classes() const;

    // throws std::invalid_argument on any broken invariant
    void validate() const;
};

// Assignment of N objects to clusters 0..k-1, every cluster nonempty.
struct Partition {
    std::vector<int> assign;
    int k = 0;

    Eigen::Index size() const { return static_cast<Eigen::Index>(assign.size()); }
    std::vector<int> cluster_sizes() const;
    void validate() const;
};

enum class PairKind { coassoc, silhouette_pair, coincidence, prediction };

// Symmetric N x N matrix over object pairs. Boolean kinds (coincidence,
// prediction) hold only 0/1 with unit diagonal.
struct PairMatrix {
    PairKind kind = PairKind::coassoc;
    Matrix values;

    Eigen::Index size() const { return values.rows(); }
    void validate() const;
};

// z(i,j) = 1 iff labels match; diagonal 1, symmetric.
PairMatrix coincidence_from_labels(const std::vector<int>& labels);
PairMatrix coincidence_from_partition(const Partition& part);

// CSV: comma delimiter, '.' decimal, no header unless flagged, label column
// (when present) last and 1-based integer.
Dataset load_csv(const std::string& path, bool has_labels, bool has_header = false);
void save_csv(const Dataset& data, const std::string& path, bool with_header = false);

// one 1-based cluster id per row
void save_partition_csv(const Partition& part, const std::string& path);
Partition load_partition_csv(const std::string& path);

// In-place deterministic row shuffle (labels follow their rows).
void shuffle_rows(Dataset& data, std::uint64_t seed);

}  // namespace trec

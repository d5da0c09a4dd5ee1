#include "trec/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trec/rng.hpp"

namespace trec {

int Dataset::num_classes() const {
    if (labels.empty()) return 0;
    return *std::max_element(labels.begin(), labels.end()) + 1;
}

void Dataset::validate() const {
    if (features.rows() < 1 || features.cols() < 1)
        throw std::invalid_argument("dataset: empty feature matrix");
    if (!features.allFinite())
        throw std::invalid_argument("dataset: non-finite feature value");
    if (!labels.empty()) {
        if (static_cast<Eigen::Index>(labels.size()) != features.rows())
            throw std::invalid_argument("dataset: label count != row count");
        int k = num_classes();
        std::vector<int> seen(k, 0);
        for (int y : labels) {
            if (y < 0 || y >= k) throw std::invalid_argument("dataset: label out of range");
            seen[y] = 1;
        }
        for (int c = 0; c < k; ++c)
            if (!seen[c]) throw std::invalid_argument("dataset: class id gap");
    }
}

std::vector<int> Partition::cluster_sizes() const {
    std::vector<int> sizes(k, 0);
    for (int a : assign) {
        if (a < 0 || a >= k) throw std::invalid_argument("partition: cluster id out of range");
        ++sizes[a];
    }
    return sizes;
}

void Partition::validate() const {
    if (k < 1) throw std::invalid_argument("partition: k < 1");
    if (assign.empty()) throw std::invalid_argument("partition: empty assignment");
    for (int s : cluster_sizes())
        if (s == 0) throw std::invalid_argument("partition: empty cluster");
}

void PairMatrix::validate() const {
    const Eigen::Index n = values.rows();
    if (n != values.cols()) throw std::invalid_argument("pair matrix: not square");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (values(i, j) != values(j, i))
                throw std::invalid_argument("pair matrix: not symmetric");
    if (kind == PairKind::coassoc || kind == PairKind::coincidence ||
        kind == PairKind::prediction) {
        if ((values.array() < 0.0).any() || (values.array() > 1.0).any())
            throw std::invalid_argument("pair matrix: entry outside [0,1]");
        for (Eigen::Index i = 0; i < n; ++i)
            if (values(i, i) != 1.0)
                throw std::invalid_argument("pair matrix: diagonal != 1");
    }
    if (kind == PairKind::coincidence || kind == PairKind::prediction) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (values(i, j) != 0.0 && values(i, j) != 1.0)
                    throw std::invalid_argument("pair matrix: non-boolean entry");
    }
}

PairMatrix coincidence_from_labels(const std::vector<int>& labels) {
    const Eigen::Index n = static_cast<Eigen::Index>(labels.size());
    PairMatrix z;
    z.kind = PairKind::coincidence;
    z.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            z.values(i, j) = labels[i] == labels[j] ? 1.0 : 0.0;
    return z;
}

PairMatrix coincidence_from_partition(const Partition& part) {
    return coincidence_from_labels(part.assign);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& field, std::size_t row) {
    const char* s = field.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    while (end && *end == ' ') ++end;
    if (end == s || (end && *end != '\0')) {
        std::ostringstream msg;
        msg << "csv: malformed value '" << field << "' at row " << row;
        throw std::runtime_error(msg.str());
    }
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "csv: non-finite value at row " << row;
        throw std::runtime_error(msg.str());
    }
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path, bool has_labels, bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);

    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::string line;
    std::size_t row_no = 0;
    bool skipped_header = !has_header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        ++row_no;
        auto fields = split_fields(line);
        if (!rows.empty() && fields.size() != rows.front().size() + (has_labels ? 1 : 0)) {
            std::ostringstream msg;
            msg << "csv: column count mismatch at row " << row_no;
            throw std::runtime_error(msg.str());
        }
        std::vector<double> vals;
        vals.reserve(fields.size());
        for (const auto& f : fields) vals.push_back(parse_number(f, row_no));
        if (has_labels) {
            double y = vals.back();
            vals.pop_back();
            if (y != std::floor(y)) {
                std::ostringstream msg;
                msg << "csv: non-integer label at row " << row_no;
                throw std::runtime_error(msg.str());
            }
            labels.push_back(static_cast<int>(y) - 1);  // 1-based in files
        }
        if (vals.empty()) {
            std::ostringstream msg;
            msg << "csv: no feature columns at row " << row_no;
            throw std::runtime_error(msg.str());
        }
        rows.push_back(std::move(vals));
    }
    if (rows.empty()) throw std::runtime_error("csv: no data rows in " + path);

    Dataset data;
    data.name = path;
    data.features.resize(static_cast<Eigen::Index>(rows.size()),
                         static_cast<Eigen::Index>(rows.front().size()));
    for (Eigen::Index i = 0; i < data.features.rows(); ++i)
        for (Eigen::Index j = 0; j < data.features.cols(); ++j)
            data.features(i, j) = rows[i][j];
    data.labels = std::move(labels);
    data.validate();
    return data;
}

void save_csv(const Dataset& data, const std::string& path, bool with_header) {
    data.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    char buf[40];
    if (with_header) {
        for (Eigen::Index j = 0; j < data.dim(); ++j) {
            if (j) out << ',';
            out << 'x' << j;
        }
        if (data.has_labels()) out << ",label";
        out << '\n';
    }
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        for (Eigen::Index j = 0; j < data.dim(); ++j) {
            if (j) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", data.features(i, j));
            out << buf;
        }
        if (data.has_labels()) out << ',' << (data.labels[i] + 1);
        out << '\n';
    }
}

void save_partition_csv(const Partition& part, const std::string& path) {
    part.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("csv: cannot write " + path);
    for (int a : part.assign) out << (a + 1) << '\n';
}

Partition load_partition_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("csv: cannot open " + path);
    Partition part;
    std::string line;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row_no;
        double v = parse_number(split_fields(line).at(0), row_no);
        part.assign.push_back(static_cast<int>(v) - 1);
    }
    part.k = part.assign.empty()
                 ? 0
                 : *std::max_element(part.assign.begin(), part.assign.end()) + 1;
    part.validate();
    return part;
}

void shuffle_rows(Dataset& data, std::uint64_t seed) {
    Rng rng(seed);
    const Eigen::Index n = data.size();
    for (Eigen::Index i = n - 1; i > 0; --i) {
        Eigen::Index j = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(i) + 1));
        data.features.row(i).swap(data.features.row(j));
        if (data.has_labels()) std::swap(data.labels[i], data.labels[j]);
    }
}

}  // namespace trec

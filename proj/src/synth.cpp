#include "trec/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "trec/rng.hpp"

namespace trec {

void GaussStripModel::validate() const {
    if (dim < 2 || dim % 2 != 0)
        throw std::invalid_argument("gauss-strip model: dim must be even and >= 2");
    if (n_per_class < 2)
        throw std::invalid_argument("gauss-strip model: n_per_class < 2");
    if (gamma1 <= 0.0) throw std::invalid_argument("gauss-strip model: gamma1 <= 0");
    if (gamma2 < 0.0) throw std::invalid_argument("gauss-strip model: gamma2 < 0");
    if (mu1.size() != dim || mu2.size() != dim || start3.size() != dim ||
        start4.size() != dim)
        throw std::invalid_argument("gauss-strip model: vector size != dim");
}

namespace {

Vector alternating(int dim, double first, double second) {
    Vector v(dim);
    for (int j = 0; j < dim; ++j) v(j) = (j % 2 == 0) ? first : second;
    return v;
}

}  // namespace

GaussStripModel target_model() {
    GaussStripModel m;
    m.dim = 24;
    m.n_per_class = 20;
    m.mu1 = Vector::Zero(24);
    m.mu2 = Vector::Constant(24, 8.0);
    m.start3 = alternating(24, -6.0, 6.0);
    m.start4 = alternating(24, 6.0, -6.0);
    m.gamma1 = 0.2;
    m.gamma2 = 0.25;
    return m;
}

GaussStripModel source_model() {
    GaussStripModel m;
    m.dim = 16;
    m.n_per_class = 25;
    m.mu1 = Vector::Zero(16);
    m.mu2 = Vector::Constant(16, 6.0);
    m.start3 = alternating(16, -5.0, 5.0);
    m.start4 = alternating(16, 5.0, -5.0);
    m.gamma1 = 0.2;
    m.gamma2 = 0.2;
    return m;
}

Dataset sample(const GaussStripModel& model, std::uint64_t seed) {
    model.validate();
    Rng rng(seed);
    const int n = model.n_per_class;
    const int d = model.dim;
    const double noise_sd = std::sqrt(model.gamma2);

    Dataset data;
    data.name = "gauss-strip";
    data.features.resize(4 * n, d);
    data.labels.resize(4 * n);

    int row = 0;
    for (int cls = 0; cls < 2; ++cls) {
        const Vector& mu = cls == 0 ? model.mu1 : model.mu2;
        for (int i = 0; i < n; ++i, ++row) {
            for (int j = 0; j < d; ++j) data.features(row, j) = mu(j) + rng.normal();
            data.labels[row] = cls;
        }
    }
    for (int cls = 2; cls < 4; ++cls) {
        const Vector& start = cls == 2 ? model.start3 : model.start4;
        Vector x(d);
        for (int i = 0; i < n; ++i, ++row) {
            if (i == 0) {
                // the first strip point carries its own noise draw
                for (int j = 0; j < d; ++j) x(j) = start(j) + noise_sd * rng.normal();
            } else {
                for (int j = 0; j < d; ++j)
                    x(j) += model.gamma1 + noise_sd * rng.normal();
            }
            data.features.row(row) = x;
            data.labels[row] = cls;
        }
    }
    data.validate();
    return data;
}

}  // namespace trec

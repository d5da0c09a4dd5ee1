#pragma once

#include <cstdint>

#include "trec/dataset.hpp"

namespace trec {

// Four-class generator: classes 1 and 2 are spherical Gaussians N(mu, I),
// classes 3 and 4 are noisy strips grown from a start point by steps of
// gamma1 along the all-ones direction with N(0, gamma2*I) noise per point.
struct GaussStripModel {
    int dim = 2;
    int n_per_class = 2;
    Vector mu1, mu2;
    Vector start3, start4;
    double gamma1 = 0.2;
    double gamma2 = 0.25;  // noise variance; 0 gives the exact noiseless strip

    void validate() const;
};

// 24 features, 20 objects per class, Gaussians at 0 and (8,...,8),
// strips from (-6,6,...) and (6,-6,...), step 0.2, noise variance 0.25.
GaussStripModel target_model();

// 16 features, 25 objects per class, Gaussians at 0 and (6,...,6),
// strips from (-5,5,...) and (5,-5,...), step 0.2, noise variance 0.2.
GaussStripModel source_model();

// Labeled sample in class-block order (class 1 rows first, then 2, 3, 4).
// Identical seed gives bitwise-identical output.
Dataset sample(const GaussStripModel& model, std::uint64_t seed);

}  // namespace trec

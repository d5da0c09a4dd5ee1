#pragma once

#include <string>
#include <vector>

#include "trec/dataset.hpp"
#include "trec/svm.hpp"

namespace trec {

// Scatter of two feature columns, markers colored by label when present.
// Output bytes are a pure function of the inputs.
void plot_scatter(const Dataset& data, int dim_x, int dim_y, const std::string& path);

// Decision regions of the pair classifier over [-1,1] x [0,1] (P on the
// horizontal axis, H on the vertical) plus the training pairs.
void plot_boundary(const PairClassifier& model, const Matrix& pairs,
                   const std::vector<int>& labels, const std::string& path);

}  // namespace trec

#include "trec/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace trec {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 480;
constexpr int kMargin = 40;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Axis {
    double lo, hi;
    double to_px(double v, int px_lo, int px_hi) const {
        double t = (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

Axis padded_axis(double lo, double hi) {
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

void plot_scatter(const Dataset& data, int dim_x, int dim_y, const std::string& path) {
    data.validate();
    if (dim_x < 0 || dim_y < 0 || dim_x >= data.dim() || dim_y >= data.dim())
        throw std::invalid_argument("plot: dimension out of range");

    Axis ax = padded_axis(data.features.col(dim_x).minCoeff(),
                          data.features.col(dim_x).maxCoeff());
    Axis ay = padded_axis(data.features.col(dim_y).minCoeff(),
                          data.features.col(dim_y).maxCoeff());

    std::ofstream out(path);
    if (!out) throw std::runtime_error("plot: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\">\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (Eigen::Index i = 0; i < data.size(); ++i) {
        double px = ax.to_px(data.features(i, dim_x), kMargin, kWidth - kMargin);
        double py = ay.to_px(data.features(i, dim_y), kHeight - kMargin, kMargin);
        const char* color =
            data.has_labels() ? kPalette[data.labels[i] % kPaletteSize] : kPalette[0];
        out << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">feature " << dim_x
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">feature " << dim_y << "</text>\n";
    out << "</svg>\n";
}

void plot_boundary(const PairClassifier& model, const Matrix& pairs,
                   const std::vector<int>& labels, const std::string& path) {
    if (pairs.cols() != 2) throw std::invalid_argument("plot: pairs must be M x 2");
    if (static_cast<Eigen::Index>(labels.size()) != pairs.rows())
        throw std::invalid_argument("plot: label count mismatch");

    const Axis ax{-1.0, 1.0};  // P
    const Axis ay{0.0, 1.0};   // H
    const int nx = 160, ny = 80;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("plot: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\">\n";

    // class regions: vertical runs of equal prediction merged into rects
    const double cell_w = (ax.hi - ax.lo) / nx;
    const double cell_h = (ay.hi - ay.lo) / ny;
    for (int cx = 0; cx < nx; ++cx) {
        const double p = ax.lo + (cx + 0.5) * cell_w;
        int run_start = 0;
        int run_class = model.decision(p, ay.lo + 0.5 * cell_h) >= 0.0 ? 1 : 0;
        for (int cy = 1; cy <= ny; ++cy) {
            int cls = -1;
            if (cy < ny) {
                const double h = ay.lo + (cy + 0.5) * cell_h;
                cls = model.decision(p, h) >= 0.0 ? 1 : 0;
            }
            if (cls == run_class) continue;
            const double x0 = ax.to_px(ax.lo + cx * cell_w, kMargin, kWidth - kMargin);
            const double x1 =
                ax.to_px(ax.lo + (cx + 1) * cell_w, kMargin, kWidth - kMargin);
            const double y0 = ay.to_px(ay.lo + run_start * cell_h, kHeight - kMargin,
                                       kMargin);
            const double y1 = ay.to_px(ay.lo + cy * cell_h, kHeight - kMargin, kMargin);
            out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\""
                << fmt(x1 - x0) << "\" height=\"" << fmt(y0 - y1) << "\" fill=\""
                << (run_class == 1 ? "#ffd9d9" : "#d9e4ff") << "\"/>\n";
            run_start = cy;
            run_class = cls;
        }
    }

    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (Eigen::Index i = 0; i < pairs.rows(); ++i) {
        double px = ax.to_px(pairs(i, 0), kMargin, kWidth - kMargin);
        double py = ay.to_px(pairs(i, 1), kHeight - kMargin, kMargin);
        const char* color = labels[static_cast<std::size_t>(i)] == 1 ? "#d62728" : "#1f77b4";
        out << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py)
            << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">P</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\">H</text>\n";
    out << "</svg>\n";
}

}  // namespace trec

#include "qsc/classifier.hpp"

#include "qsc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qsc::classifier {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double sign_of(Label l) { return l == Label::class1 ? 1.0 : -1.0; }

// Fills w, b and margin from an original-coordinate hyperplane.
void finish(SeparabilityReport& rep, const std::vector<LabeledPoint>& points, std::vector<double> w,
            double b) {
    const double norm = std::sqrt(dot(w, w));
    for (auto& x : w) x /= norm;
    b /= norm;
    double margin = INFINITY;
    for (const auto& p : points) margin = std::min(margin, sign_of(p.label) * (dot(w, p.features) + b));
    rep.w = std::move(w);
    rep.b = b;
    rep.margin = std::max(0.0, margin);
}

}  // namespace

SeparabilityReport check_linear_separability(const std::vector<LabeledPoint>& points,
                                             std::size_t max_epochs) {
    if (points.empty()) throw EmptyInput("check_linear_separability: no points");
    const std::size_t dims = points.front().features.size();
    if (dims == 0) throw InvalidArgument("check_linear_separability: points have no features");
    for (const auto& p : points) {
        if (p.features.size() != dims) {
            throw DimensionMismatch("check_linear_separability: inconsistent feature dimension");
        }
    }

    SeparabilityReport rep;
    const bool single_class = std::all_of(points.begin(), points.end(), [&](const LabeledPoint& p) {
        return p.label == points.front().label;
    });
    if (single_class) {
        // Any hyperplane with every point on one side.
        std::vector<double> w(dims, 0.0);
        const double s = sign_of(points.front().label);
        w[0] = s;
        double extreme = -INFINITY;
        for (const auto& p : points) extreme = std::max(extreme, -p.features[0]);
        rep.separable = true;
        finish(rep, points, std::move(w), s * (extreme + 1.0));
        return rep;
    }

    // Standardize each coordinate so the perceptron is insensitive to
    // translations and per-axis scaling of the inputs.
    std::vector<double> mean(dims, 0.0), scale(dims, 0.0);
    for (const auto& p : points)
        for (std::size_t d = 0; d < dims; ++d) mean[d] += p.features[d];
    for (auto& m : mean) m /= static_cast<double>(points.size());
    for (const auto& p : points)
        for (std::size_t d = 0; d < dims; ++d) scale[d] += std::pow(p.features[d] - mean[d], 2);
    for (auto& s : scale) {
        s = std::sqrt(s / static_cast<double>(points.size()));
        if (!(s > 0.0)) s = 1.0;
    }

    // Augmented inputs (z, 1), pre-multiplied by the label.
    std::vector<std::vector<double>> signed_inputs;
    signed_inputs.reserve(points.size());
    for (const auto& p : points) {
        std::vector<double> z(dims + 1, 1.0);
        for (std::size_t d = 0; d < dims; ++d) z[d] = (p.features[d] - mean[d]) / scale[d];
        for (auto& v : z) v *= sign_of(p.label);
        signed_inputs.push_back(std::move(z));
    }

    std::vector<double> w(dims + 1, 0.0);
    for (std::size_t epoch = 1; epoch <= max_epochs; ++epoch) {
        bool mistake = false;
        for (const auto& x : signed_inputs) {
            if (dot(w, x) <= 0.0) {
                for (std::size_t d = 0; d <= dims; ++d) w[d] += x[d];
                mistake = true;
            }
        }
        if (!mistake) {
            rep.separable = true;
            rep.iterations = epoch;
            std::vector<double> w_orig(dims);
            double b = w[dims];
            for (std::size_t d = 0; d < dims; ++d) {
                w_orig[d] = w[d] / scale[d];
                b -= w[d] * mean[d] / scale[d];
            }
            finish(rep, points, std::move(w_orig), b);
            return rep;
        }
    }
    rep.separable = false;
    rep.iterations = max_epochs;
    return rep;
}

}  // namespace qsc::classifier

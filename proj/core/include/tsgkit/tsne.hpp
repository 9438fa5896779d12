#pragma once

#include "tsgkit/tensor.hpp"

#include <cstdint>
#include <vector>

namespace tsgkit {

enum class PointLabel { real, synthetic };

/// 2-D embedding of flattened windows with their source labels and the
/// KL-divergence trace recorded during optimization.
struct Embedding2D {
    struct Point {
        double x = 0.0;
        double y = 0.0;
        PointLabel label = PointLabel::real;
    };
    std::vector<Point> points;
    std::vector<double> kl_trace;
};

struct TsneConfig {
    double perplexity = 30.0;
    int iterations = 1000;
    std::uint64_t seed = 0;
    std::size_t cap = 2000;          // per-set subsample ceiling
    double exaggeration = 12.0;      // early exaggeration factor
    int exaggeration_iterations = 250;
    double learning_rate = 200.0;
    double momentum_initial = 0.5;
    double momentum_final = 0.8;
    int momentum_switch_iteration = 250;
};

/// Exact t-SNE of the two window sets: per-point Gaussian bandwidths are
/// calibrated to the target perplexity by bisection, affinities symmetrized
/// and normalized, and the Student-t embedding optimized by gradient descent
/// with momentum, gains, and early exaggeration.
///
/// Geometry is a pure function of the multiset of windows plus the seed:
/// points are processed in a content-canonical order and initial coordinates
/// derive from content hashes, so swapping the two inputs only swaps labels.
Embedding2D tsne_embed(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                       const TsneConfig& config);

namespace tsne_detail {

/// Conditional affinities p(j|i) for one squared-distance matrix: every row
/// sums to 1 and its Shannon perplexity matches the target to the bisection
/// tolerance. Diagonal is zero.
struct Affinities {
    std::vector<double> conditional;          // n x n row-major
    std::vector<double> achieved_perplexity;  // per point
};
Affinities conditional_affinities(const std::vector<double>& squared_distances,
                                  std::size_t count, double perplexity);

} // namespace tsne_detail

} // namespace tsgkit

#include "tsgkit/distribution.hpp"

#include "tsgkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tsgkit {

namespace {

std::vector<double> histogram_frequencies(const std::vector<double>& pool, double lo,
                                          double width, int bins) {
    std::vector<double> freq(static_cast<std::size_t>(bins), 0.0);
    for (const double v : pool) {
        const double pos = width > 0.0 ? (v - lo) / width : 0.0;
        const int b = pos <= 0.0 ? 0
                                 : (pos >= static_cast<double>(bins - 1)
                                        ? bins - 1
                                        : static_cast<int>(pos));
        freq[static_cast<std::size_t>(b)] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(pool.size());
    for (double& f : freq) f *= inv;
    return freq;
}

std::vector<double> kde_curve(const std::vector<double>& pool,
                              const std::vector<double>& grid) {
    const double n = static_cast<double>(pool.size());
    double mean = 0.0;
    for (const double v : pool) mean += v;
    mean /= n;
    double var = 0.0;
    for (const double v : pool) var += (v - mean) * (v - mean);
    var /= n;
    const double sigma = std::sqrt(var);
    // Silverman's rule; fall back to a nominal width for constant pools.
    double bandwidth = sigma > 0.0 ? 1.06 * sigma * std::pow(n, -0.2) : 1.0;
    std::vector<double> density(grid.size(), 0.0);
    const double norm = 1.0 / (n * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double acc = 0.0;
        for (const double v : pool) {
            const double z = (grid[g] - v) / bandwidth;
            acc += std::exp(-0.5 * z * z);
        }
        density[g] = acc * norm;
    }
    return density;
}

} // namespace

DistributionData distribution_data(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                                   int bins, bool kde) {
    if (bins < 2) throw ParameterError("distribution plot needs at least 2 bins");
    const auto& a = orig.values();
    const auto& b = gen.values();

    double lo = a[0], hi = a[0];
    for (const double v : a) { lo = std::min(lo, v); hi = std::max(hi, v); }
    for (const double v : b) { lo = std::min(lo, v); hi = std::max(hi, v); }
    if (lo == hi) { lo -= 0.5; hi += 0.5; }

    DistributionData out;
    out.kde = kde;
    const double width = (hi - lo) / bins;
    out.position.resize(static_cast<std::size_t>(bins));
    for (int g = 0; g < bins; ++g) {
        out.position[static_cast<std::size_t>(g)] = lo + (g + 0.5) * width;
    }
    if (kde) {
        out.real = kde_curve(a, out.position);
        out.synthetic = kde_curve(b, out.position);
    } else {
        out.real = histogram_frequencies(a, lo, width, bins);
        out.synthetic = histogram_frequencies(b, lo, width, bins);
    }
    return out;
}

} // namespace tsgkit

#pragma once

#include "tsgkit/tensor.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tsgkit {

/// How original and generated windows are paired for ED/DTW. Index pairing
/// matches window r with window r; nearest-neighbor pairs each generated
/// window with its closest original window (Euclidean over the flat window).
enum class Pairing { index, nearest_neighbor };

struct MeasureConfig {
    int histogram_bins = 50;
    std::optional<int> acf_max_lag;          // default l - 1
    Pairing pairing = Pairing::nearest_neighbor;
    int repeats = 5;
    std::optional<std::size_t> nn_subsample; // optional cap, redrawn per repeat
    std::uint64_t seed = 0;
};

struct MeasureStat {
    double mean = 0.0;
    double std = 0.0;
};

/// Named measure -> (mean, std over repeats) for one (original, generated)
/// pair. Measures that failed are absent from `entries` and explained in
/// `diagnostics`.
struct MeasureReport {
    std::map<std::string, MeasureStat> entries;
    std::optional<double> wall_clock_seconds;
    std::map<std::string, std::string> diagnostics;
};

/// Mean absolute gap between per-(dimension, time step) histograms with
/// `bins` equal-width bins spanning the original's min/max at that cell.
/// Generated values outside the range clamp to the end bins, so each
/// histogram stays a probability vector.
double mdd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, int bins = 50);

/// Mean absolute gap between window-averaged sample autocorrelations at lags
/// 1..max_lag, per dimension. Uses the biased (divide-by-l) estimator, which
/// is bounded in [-1, 1]. Zero-variance window dimensions contribute an ACF
/// of 0 at every lag.
double acd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, int max_lag);

/// Mean over dimensions of |skewness(gen) - skewness(orig)| with moments
/// pooled over all windows and time steps.
double sd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen);

/// Same as sd but with the fourth standardized moment (non-excess kurtosis).
double kd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen);

/// Mean window-level Euclidean distance under the chosen pairing.
double ed(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, Pairing pairing);

/// Dependent multivariate DTW between two windows: per-step cost is the
/// Euclidean distance across dimensions, path steps are (1,0),(0,1),(1,1).
double dtw(const WindowView& a, const WindowView& b);

/// Mean window-level DTW under the chosen pairing. Nearest-neighbor pairing
/// reuses each generated window's ED-nearest original partner.
double dtw_set(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, Pairing pairing);

/// For each generated window, the index of the ED-nearest original window
/// and that distance. Ties keep the first index encountered in scan order.
struct NearestNeighbors {
    std::vector<std::size_t> partner;
    std::vector<double> distance;
};
NearestNeighbors nearest_partners(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen);

/// Full suite: MDD, ACD, SD, KD, ED, DTW, repeated `repeats` times.
/// Deterministic measures report std 0; with nn_subsample set, the subsample
/// is redrawn each repeat. A failing measure is recorded as a diagnostic.
MeasureReport run_suite(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                        const MeasureConfig& config);

/// Monotonic wall-clock around an action.
template <typename F>
auto timed(F&& action) -> std::pair<decltype(action()), double> {
    const auto start = std::chrono::steady_clock::now();
    auto result = action();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return {std::move(result), elapsed.count()};
}

} // namespace tsgkit

#pragma once

#include "tsgkit/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace tsgkit {

/// Per-dimension min/max recorded while fitting [0,1] normalization,
/// so generated data can be de-normalized externally.
struct Scaler {
    std::vector<double> minimum;
    std::vector<double> maximum;

    void save(const std::filesystem::path& path) const;
    static Scaler load(const std::filesystem::path& path);
};

struct PreprocessConfig {
    std::optional<std::size_t> seq_len;      // empty = estimate from autocorrelation
    std::size_t stride = 1;
    double split_ratio = 0.9;
    std::uint64_t shuffle_seed = 0;
    bool normalize = true;
    std::optional<std::size_t> acf_max_lag;  // auto mode only; default min(L-1, max(L/2, 3), 1000)
};

struct PipelineResult {
    TimeSeriesTensor train;
    TimeSeriesTensor test;
    Scaler scaler;
    std::size_t used_seq_len;
};

/// Smallest lag k >= 2 that is a local maximum of the dimension-averaged
/// sample autocorrelation with value above 0.1. Empty when no such lag
/// exists, in which case the caller must supply the window length itself.
std::optional<std::size_t> estimate_period(const RawSeries& raw, std::size_t max_lag);

/// Sliding windows of length l; for stride 1 this yields R = L - l + 1.
TimeSeriesTensor segment(const RawSeries& raw, std::size_t seq_len, std::size_t stride = 1);

/// Deterministic window permutation; the multiset of windows is unchanged.
TimeSeriesTensor shuffle_windows(const TimeSeriesTensor& tensor, std::uint64_t seed);

/// Front floor(ratio*R) windows as train, the rest as test.
std::pair<TimeSeriesTensor, TimeSeriesTensor> split(const TimeSeriesTensor& tensor,
                                                    double ratio);

/// Fit per-dimension min/max on train and map values to [x - min]/[max - min].
/// Constant dimensions map to 0.5. Values outside the fitted range are NOT
/// clipped, so a test split may fall outside [0,1].
std::pair<Scaler, TimeSeriesTensor> fit_normalize(const TimeSeriesTensor& train);
TimeSeriesTensor apply_normalize(const Scaler& scaler, const TimeSeriesTensor& tensor);

/// segment -> shuffle -> split -> normalize (fit on train, applied to both).
PipelineResult run_pipeline(const RawSeries& raw, const PreprocessConfig& config);

} // namespace tsgkit

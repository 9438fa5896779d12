#pragma once

#include "tsgkit/measures.hpp"
#include "tsgkit/tensor.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tsgkit {

/// Configuration for the synthetic sine dataset: R windows of l steps in N
/// dimensions, each dimension following sin(2*pi*eta*j + theta) with
/// eta ~ U[0,1], theta ~ U[-pi,pi), j = 1..l. By default every dimension
/// draws its own (eta, theta); shared_params reuses one pair per window.
struct SineConfig {
    std::size_t r_count = 10000;
    std::size_t seq_len = 24;
    std::size_t dim_count = 5;
    std::uint64_t seed = 0;
    bool shared_params = false;
};

/// Deterministic in the seed; windows use independent counter-based streams.
TimeSeriesTensor gen_sine(const SineConfig& config);

/// One scenario row of the robustness table.
struct RobustnessRow {
    std::string scenario;
    std::map<std::string, MeasureStat> measures;
};

struct RobustnessTable {
    std::size_t r_count = 0;
    std::size_t seq_len = 0;
    std::size_t dim_count = 0;
    bool shared_params = false;
    Pairing pairing = Pairing::nearest_neighbor;
    std::vector<RobustnessRow> rows;  // "Identical", then "Random Sampling"
};

/// Evaluate a sine dataset against itself ("Identical") and against an
/// independently seeded dataset ("Random Sampling") with the six
/// feature/distance measures. The data is used raw, without normalization.
RobustnessTable run_robustness(std::size_t seq_len, std::uint64_t seed,
                               const MeasureConfig& measure_config,
                               std::size_t r_count = 10000, std::size_t dim_count = 5,
                               bool shared_params = false);

namespace sine_detail {

/// One window's values for explicit parameters; exposed for direct checks
/// of the formula (e.g. eta = 0 gives the constant sin(theta)).
std::vector<double> window_values(const std::vector<double>& eta,
                                  const std::vector<double>& theta, std::size_t seq_len);

} // namespace sine_detail

} // namespace tsgkit

#include "tsgkit/sine.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace tsgkit {

namespace sine_detail {

std::vector<double> window_values(const std::vector<double>& eta,
                                  const std::vector<double>& theta, std::size_t seq_len) {
    if (eta.size() != theta.size() || eta.empty()) {
        throw ShapeError("eta and theta must have the same non-zero length");
    }
    const std::size_t dims = eta.size();
    std::vector<double> out(seq_len * dims);
    for (std::size_t j = 0; j < seq_len; ++j) {
        const double step = static_cast<double>(j + 1);  // j runs 1..l
        for (std::size_t i = 0; i < dims; ++i) {
            out[j * dims + i] = std::sin(2.0 * std::numbers::pi * eta[i] * step + theta[i]);
        }
    }
    return out;
}

} // namespace sine_detail

TimeSeriesTensor gen_sine(const SineConfig& config) {
    if (config.r_count == 0 || config.seq_len == 0 || config.dim_count == 0) {
        throw ParameterError("sine config must have R, l, N >= 1");
    }
    const std::size_t wsize = config.seq_len * config.dim_count;
    std::vector<double> data(config.r_count * wsize);
    std::vector<double> eta(config.dim_count), theta(config.dim_count);
    for (std::size_t r = 0; r < config.r_count; ++r) {
        Rng rng(derive_stream(config.seed, r));
        if (config.shared_params) {
            const double e = rng.next_double();
            const double t = rng.next_double(-std::numbers::pi, std::numbers::pi);
            eta.assign(config.dim_count, e);
            theta.assign(config.dim_count, t);
        } else {
            for (std::size_t i = 0; i < config.dim_count; ++i) {
                eta[i] = rng.next_double();
                theta[i] = rng.next_double(-std::numbers::pi, std::numbers::pi);
            }
        }
        const auto window = sine_detail::window_values(eta, theta, config.seq_len);
        std::copy(window.begin(), window.end(), data.begin() + r * wsize);
    }
    return {std::move(data), config.r_count, config.seq_len, config.dim_count};
}

RobustnessTable run_robustness(std::size_t seq_len, std::uint64_t seed,
                               const MeasureConfig& measure_config, std::size_t r_count,
                               std::size_t dim_count, bool shared_params) {
    SineConfig base;
    base.r_count = r_count;
    base.seq_len = seq_len;
    base.dim_count = dim_count;
    base.shared_params = shared_params;

    SineConfig first = base;
    first.seed = derive_stream(seed, 1);
    SineConfig second = base;
    second.seed = derive_stream(seed, 2);

    const TimeSeriesTensor reference = gen_sine(first);
    const TimeSeriesTensor resampled = gen_sine(second);

    RobustnessTable table;
    table.r_count = r_count;
    table.seq_len = seq_len;
    table.dim_count = dim_count;
    table.shared_params = shared_params;
    table.pairing = measure_config.pairing;

    RobustnessRow identical;
    identical.scenario = "Identical";
    identical.measures = run_suite(reference, reference, measure_config).entries;
    table.rows.push_back(std::move(identical));

    RobustnessRow random_sampling;
    random_sampling.scenario = "Random Sampling";
    random_sampling.measures = run_suite(reference, resampled, measure_config).entries;
    table.rows.push_back(std::move(random_sampling));
    return table;
}

} // namespace tsgkit

#include "tsgkit/preprocess.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace tsgkit {

namespace {

constexpr double kAcfPeakThreshold = 0.1;

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, ptr};
}

} // namespace

void Scaler::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (std::size_t i = 0; i < minimum.size(); ++i) {
        out << i << ' ' << format_double(minimum[i]) << ' ' << format_double(maximum[i])
            << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

Scaler Scaler::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path.string());
    Scaler s;
    std::size_t index = 0;
    std::size_t expected = 0;
    double lo = 0.0, hi = 0.0;
    while (in >> index >> lo >> hi) {
        if (index != expected) {
            throw ParseError("scaler file " + path.string() + ": expected dimension " +
                             std::to_string(expected) + ", found " + std::to_string(index));
        }
        if (hi < lo) {
            throw ParseError("scaler file " + path.string() + ": max below min in dimension " +
                             std::to_string(index));
        }
        s.minimum.push_back(lo);
        s.maximum.push_back(hi);
        ++expected;
    }
    if (!in.eof()) throw ParseError("malformed scaler file: " + path.string());
    if (s.minimum.empty()) throw ParseError("empty scaler file: " + path.string());
    return s;
}

std::optional<std::size_t> estimate_period(const RawSeries& raw, std::size_t max_lag) {
    const std::size_t length = raw.length();
    const std::size_t n = raw.dim_count();
    if (max_lag >= length) {
        throw ParameterError("max_lag " + std::to_string(max_lag) +
                             " must be below series length " + std::to_string(length));
    }
    if (max_lag < 2) return std::nullopt;

    // Dimension-averaged biased sample autocorrelation of the whole series.
    std::vector<double> mean(n, 0.0), var(n, 0.0);
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t i = 0; i < n; ++i) mean[i] += raw.at(t, i);
    }
    for (std::size_t i = 0; i < n; ++i) mean[i] /= static_cast<double>(length);
    for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const double c = raw.at(t, i) - mean[i];
            var[i] += c * c;
        }
    }
    bool any_variance = false;
    for (std::size_t i = 0; i < n; ++i) {
        var[i] /= static_cast<double>(length);
        if (var[i] > 0.0) any_variance = true;
    }
    if (!any_variance) {
        throw DegenerateError("cannot estimate a period of a constant series");
    }

    std::vector<double> acf(max_lag + 1, 0.0);
    acf[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double avg = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (var[i] <= 0.0) continue;  // constant dimension contributes 0
            double num = 0.0;
            for (std::size_t t = 0; t + k < length; ++t) {
                num += (raw.at(t, i) - mean[i]) * (raw.at(t + k, i) - mean[i]);
            }
            avg += num / static_cast<double>(length) / var[i];
        }
        acf[k] = avg / static_cast<double>(n);
    }

    for (std::size_t k = 2; k + 1 <= max_lag; ++k) {
        if (acf[k] > kAcfPeakThreshold && acf[k] > acf[k - 1] && acf[k] >= acf[k + 1]) {
            return k;
        }
    }
    return std::nullopt;
}

TimeSeriesTensor segment(const RawSeries& raw, std::size_t seq_len, std::size_t stride) {
    const std::size_t length = raw.length();
    const std::size_t n = raw.dim_count();
    if (seq_len == 0) throw ParameterError("window length must be >= 1");
    if (stride == 0) throw ParameterError("stride must be >= 1");
    if (seq_len > length) {
        throw ShapeError("window length " + std::to_string(seq_len) +
                         " exceeds series length " + std::to_string(length));
    }
    const std::size_t r_count = (length - seq_len) / stride + 1;
    std::vector<double> data;
    data.reserve(r_count * seq_len * n);
    for (std::size_t r = 0; r < r_count; ++r) {
        const double* begin = raw.values().data() + r * stride * n;
        data.insert(data.end(), begin, begin + seq_len * n);
    }
    return {std::move(data), r_count, seq_len, n};
}

TimeSeriesTensor shuffle_windows(const TimeSeriesTensor& tensor, std::uint64_t seed) {
    const auto perm = random_permutation(tensor.r_count(), seed);
    return tensor.gather(perm);
}

std::pair<TimeSeriesTensor, TimeSeriesTensor> split(const TimeSeriesTensor& tensor,
                                                    double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ParameterError("split ratio must lie strictly between 0 and 1");
    }
    const std::size_t r = tensor.r_count();
    const std::size_t train_count = static_cast<std::size_t>(
        std::floor(ratio * static_cast<double>(r)));
    if (train_count == 0 || train_count == r) {
        throw SplitError("split ratio " + format_double(ratio) + " leaves an empty side for R=" +
                         std::to_string(r));
    }
    std::vector<std::size_t> front(train_count), back(r - train_count);
    for (std::size_t i = 0; i < train_count; ++i) front[i] = i;
    for (std::size_t i = train_count; i < r; ++i) back[i - train_count] = i;
    return {tensor.gather(front), tensor.gather(back)};
}

std::pair<Scaler, TimeSeriesTensor> fit_normalize(const TimeSeriesTensor& train) {
    const std::size_t n = train.dim_count();
    Scaler scaler;
    scaler.minimum.assign(n, std::numeric_limits<double>::infinity());
    scaler.maximum.assign(n, -std::numeric_limits<double>::infinity());
    const auto& values = train.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const std::size_t i = idx % n;
        scaler.minimum[i] = std::min(scaler.minimum[i], values[idx]);
        scaler.maximum[i] = std::max(scaler.maximum[i], values[idx]);
    }
    return {scaler, apply_normalize(scaler, train)};
}

TimeSeriesTensor apply_normalize(const Scaler& scaler, const TimeSeriesTensor& tensor) {
    const std::size_t n = tensor.dim_count();
    if (scaler.minimum.size() != n || scaler.maximum.size() != n) {
        throw ShapeError("scaler has " + std::to_string(scaler.minimum.size()) +
                         " dimensions, tensor has " + std::to_string(n));
    }
    std::vector<double> out(tensor.values());
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const std::size_t i = idx % n;
        const double range = scaler.maximum[i] - scaler.minimum[i];
        out[idx] = range > 0.0 ? (out[idx] - scaler.minimum[i]) / range : 0.5;
    }
    return {std::move(out), tensor.r_count(), tensor.seq_len(), n};
}

PipelineResult run_pipeline(const RawSeries& raw, const PreprocessConfig& config) {
    std::size_t seq_len = 0;
    if (config.seq_len) {
        seq_len = *config.seq_len;
    } else {
        const std::size_t length = raw.length();
        std::size_t max_lag = config.acf_max_lag.value_or(
            std::min<std::size_t>({length - 1, std::max<std::size_t>(length / 2, 3), 1000}));
        const auto period = estimate_period(raw, max_lag);
        if (!period) {
            throw DegenerateError(
                "no autocorrelation period found; supply the window length explicitly");
        }
        seq_len = *period;
    }

    TimeSeriesTensor windows = segment(raw, seq_len, config.stride);
    TimeSeriesTensor shuffled = shuffle_windows(windows, config.shuffle_seed);
    auto [train, test] = split(shuffled, config.split_ratio);
    if (!config.normalize) {
        Scaler identity;
        identity.minimum.assign(raw.dim_count(), 0.0);
        identity.maximum.assign(raw.dim_count(), 1.0);
        return {std::move(train), std::move(test), std::move(identity), seq_len};
    }
    auto [scaler, train_norm] = fit_normalize(train);
    TimeSeriesTensor test_norm = apply_normalize(scaler, test);
    return {std::move(train_norm), std::move(test_norm), std::move(scaler), seq_len};
}

} // namespace tsgkit

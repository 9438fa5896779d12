#include "tsgkit/measures.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace tsgkit {

namespace {

void require_window_shape(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen) {
    if (!orig.same_window_shape(gen)) {
        throw ShapeError("tensors have window shapes (" + std::to_string(orig.seq_len()) +
                         ", " + std::to_string(orig.dim_count()) + ") and (" +
                         std::to_string(gen.seq_len()) + ", " +
                         std::to_string(gen.dim_count()) + ")");
    }
}

void require_dims(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen) {
    if (orig.dim_count() != gen.dim_count()) {
        throw ShapeError("tensors have dimension counts " + std::to_string(orig.dim_count()) +
                         " and " + std::to_string(gen.dim_count()));
    }
}

// Relative-frequency histogram of the values at one (dimension, time step)
// cell, with bins fixed by [lo, hi]. Out-of-range values clamp to end bins.
void cell_histogram(const TimeSeriesTensor& t, std::size_t j, std::size_t i, double lo,
                    double width, int bins, std::vector<double>& freq) {
    freq.assign(static_cast<std::size_t>(bins), 0.0);
    const std::size_t r_count = t.r_count();
    for (std::size_t r = 0; r < r_count; ++r) {
        const double v = t.at(r, j, i);
        // clamp in double first: far-out values must not overflow the cast
        const double pos = width > 0.0 ? (v - lo) / width : 0.0;
        const int b = pos <= 0.0 ? 0
                                 : (pos >= static_cast<double>(bins - 1)
                                        ? bins - 1
                                        : static_cast<int>(pos));
        freq[static_cast<std::size_t>(b)] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(r_count);
    for (double& f : freq) f *= inv;
}

} // namespace

double mdd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, int bins) {
    require_window_shape(orig, gen);
    if (bins < 2) throw ParameterError("histogram bin count must be >= 2");

    const std::size_t seq_len = orig.seq_len();
    const std::size_t dims = orig.dim_count();
    std::vector<double> freq_orig, freq_gen;
    double total = 0.0;
    std::size_t terms = 0;
    for (std::size_t i = 0; i < dims; ++i) {
        for (std::size_t j = 0; j < seq_len; ++j) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < orig.r_count(); ++r) {
                const double v = orig.at(r, j, i);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            if (lo == hi) {
                // Degenerate cell: a single bin holds everything on both sides.
                ++terms;
                continue;
            }
            const double width = (hi - lo) / bins;
            cell_histogram(orig, j, i, lo, width, bins, freq_orig);
            cell_histogram(gen, j, i, lo, width, bins, freq_gen);
            for (int b = 0; b < bins; ++b) {
                total += std::abs(freq_gen[static_cast<std::size_t>(b)] -
                                  freq_orig[static_cast<std::size_t>(b)]);
            }
            terms += static_cast<std::size_t>(bins);
        }
    }
    return total / static_cast<double>(terms);
}

namespace {

// Window-averaged biased ACF per dimension; rows are dimensions, columns lags
// 1..max_lag. Zero-variance (constant) window dimensions contribute 0.
std::vector<double> mean_window_acf(const TimeSeriesTensor& t, int max_lag) {
    const std::size_t r_count = t.r_count();
    const std::size_t seq_len = t.seq_len();
    const std::size_t dims = t.dim_count();
    std::vector<double> acc(dims * static_cast<std::size_t>(max_lag), 0.0);
    std::vector<double> centered(seq_len);
    for (std::size_t i = 0; i < dims; ++i) {
        for (std::size_t r = 0; r < r_count; ++r) {
            double lo = t.at(r, 0, i), hi = lo, mean = 0.0;
            for (std::size_t j = 0; j < seq_len; ++j) {
                const double v = t.at(r, j, i);
                mean += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            mean /= static_cast<double>(seq_len);
            if (lo == hi) continue;  // constant window: ACF counted as 0
            double var = 0.0;
            for (std::size_t j = 0; j < seq_len; ++j) {
                centered[j] = t.at(r, j, i) - mean;
                var += centered[j] * centered[j];
            }
            var /= static_cast<double>(seq_len);
            if (var <= 0.0) continue;
            for (int k = 1; k <= max_lag; ++k) {
                double num = 0.0;
                for (std::size_t j = 0; j + static_cast<std::size_t>(k) < seq_len; ++j) {
                    num += centered[j] * centered[j + static_cast<std::size_t>(k)];
                }
                acc[i * static_cast<std::size_t>(max_lag) + static_cast<std::size_t>(k - 1)] +=
                    num / static_cast<double>(seq_len) / var;
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(r_count);
    for (double& v : acc) v *= inv;
    return acc;
}

} // namespace

double acd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, int max_lag) {
    require_window_shape(orig, gen);
    if (max_lag < 1 || static_cast<std::size_t>(max_lag) >= orig.seq_len()) {
        throw ParameterError("acf max lag must lie in [1, l-1]");
    }
    const auto a = mean_window_acf(orig, max_lag);
    const auto b = mean_window_acf(gen, max_lag);
    double total = 0.0;
    for (std::size_t idx = 0; idx < a.size(); ++idx) total += std::abs(a[idx] - b[idx]);
    return total / static_cast<double>(a.size());
}

namespace {

// Standardized third and fourth moments per dimension, pooled over all
// windows and time steps.
struct PooledMoments {
    std::vector<double> skewness;
    std::vector<double> kurtosis;
};

PooledMoments pooled_moments(const TimeSeriesTensor& t, const char* role) {
    const std::size_t dims = t.dim_count();
    const std::size_t samples = t.r_count() * t.seq_len();
    std::vector<double> mean(dims, 0.0);
    const auto& values = t.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) mean[idx % dims] += values[idx];
    for (double& m : mean) m /= static_cast<double>(samples);

    std::vector<double> m2(dims, 0.0), m3(dims, 0.0), m4(dims, 0.0);
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        const std::size_t i = idx % dims;
        const double c = values[idx] - mean[i];
        const double c2 = c * c;
        m2[i] += c2;
        m3[i] += c2 * c;
        m4[i] += c2 * c2;
    }
    PooledMoments out;
    out.skewness.resize(dims);
    out.kurtosis.resize(dims);
    for (std::size_t i = 0; i < dims; ++i) {
        m2[i] /= static_cast<double>(samples);
        m3[i] /= static_cast<double>(samples);
        m4[i] /= static_cast<double>(samples);
        if (m2[i] <= 0.0) {
            throw DegenerateError(std::string(role) + " tensor has zero variance in dimension " +
                                  std::to_string(i));
        }
        const double sigma = std::sqrt(m2[i]);
        out.skewness[i] = m3[i] / (sigma * sigma * sigma);
        out.kurtosis[i] = m4[i] / (m2[i] * m2[i]);
    }
    return out;
}

} // namespace

double sd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen) {
    require_dims(orig, gen);
    const auto a = pooled_moments(orig, "original");
    const auto b = pooled_moments(gen, "generated");
    double total = 0.0;
    for (std::size_t i = 0; i < a.skewness.size(); ++i) {
        total += std::abs(b.skewness[i] - a.skewness[i]);
    }
    return total / static_cast<double>(a.skewness.size());
}

double kd(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen) {
    require_dims(orig, gen);
    const auto a = pooled_moments(orig, "original");
    const auto b = pooled_moments(gen, "generated");
    double total = 0.0;
    for (std::size_t i = 0; i < a.kurtosis.size(); ++i) {
        total += std::abs(b.kurtosis[i] - a.kurtosis[i]);
    }
    return total / static_cast<double>(a.kurtosis.size());
}

namespace {

double window_distance(const double* a, const double* b, std::size_t size) {
    double sum = 0.0;
    for (std::size_t idx = 0; idx < size; ++idx) {
        const double d = a[idx] - b[idx];
        sum += d * d;
    }
    return std::sqrt(sum);
}

// Squared distance with early abandoning once the running sum exceeds the
// best candidate. Processes blocks of 16 coordinates between checks so the
// inner loop still vectorizes.
double squared_distance_bounded(const double* a, const double* b, std::size_t size,
                                double bound) {
    double sum = 0.0;
    std::size_t idx = 0;
    while (idx + 16 <= size) {
        for (std::size_t u = 0; u < 16; ++u) {
            const double d = a[idx + u] - b[idx + u];
            sum += d * d;
        }
        idx += 16;
        if (sum > bound) return sum;
    }
    for (; idx < size; ++idx) {
        const double d = a[idx] - b[idx];
        sum += d * d;
    }
    return sum;
}

} // namespace

NearestNeighbors nearest_partners(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen) {
    require_window_shape(orig, gen);
    const std::size_t wsize = orig.seq_len() * orig.dim_count();
    const std::size_t r_orig = orig.r_count();
    const std::size_t r_gen = gen.r_count();
    const bool aligned = r_orig == r_gen;

    NearestNeighbors nn;
    nn.partner.resize(r_gen);
    nn.distance.resize(r_gen);
    const double* obase = orig.values().data();
    const double* gbase = gen.values().data();
    for (std::size_t r = 0; r < r_gen; ++r) {
        const double* g = gbase + r * wsize;
        // Seeding the scan with the index-aligned candidate makes the
        // identical-tensor case O(R) instead of O(R^2); only a strictly
        // smaller distance replaces it, so results stay deterministic.
        std::size_t best_idx = aligned ? r : 0;
        double best = squared_distance_bounded(g, obase + best_idx * wsize, wsize,
                                               std::numeric_limits<double>::infinity());
        if (best > 0.0) {
            for (std::size_t j = 0; j < r_orig; ++j) {
                if (j == best_idx) continue;
                const double d2 = squared_distance_bounded(g, obase + j * wsize, wsize, best);
                if (d2 < best) {
                    best = d2;
                    best_idx = j;
                    if (best == 0.0) break;
                }
            }
        }
        nn.partner[r] = best_idx;
        nn.distance[r] = std::sqrt(best);
    }
    return nn;
}

double ed(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, Pairing pairing) {
    require_window_shape(orig, gen);
    if (pairing == Pairing::index) {
        if (orig.r_count() != gen.r_count()) {
            throw PairingError("index pairing requires equal window counts, got " +
                               std::to_string(orig.r_count()) + " and " +
                               std::to_string(gen.r_count()));
        }
        const std::size_t wsize = orig.seq_len() * orig.dim_count();
        double total = 0.0;
        for (std::size_t r = 0; r < orig.r_count(); ++r) {
            total += window_distance(orig.values().data() + r * wsize,
                                     gen.values().data() + r * wsize, wsize);
        }
        return total / static_cast<double>(orig.r_count());
    }
    const auto nn = nearest_partners(orig, gen);
    return std::accumulate(nn.distance.begin(), nn.distance.end(), 0.0) /
           static_cast<double>(nn.distance.size());
}

double dtw(const WindowView& a, const WindowView& b) {
    if (a.dim_count != b.dim_count) {
        throw ShapeError("DTW windows have dimension counts " + std::to_string(a.dim_count) +
                         " and " + std::to_string(b.dim_count));
    }
    const std::size_t la = a.seq_len, lb = b.seq_len, dims = a.dim_count;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(lb + 1, kInf), cur(lb + 1, kInf);
    prev[0] = 0.0;
    for (std::size_t i = 1; i <= la; ++i) {
        cur[0] = kInf;
        const double* row_a = a.data + (i - 1) * dims;
        for (std::size_t j = 1; j <= lb; ++j) {
            const double* row_b = b.data + (j - 1) * dims;
            double s = 0.0;
            for (std::size_t d = 0; d < dims; ++d) {
                const double diff = row_a[d] - row_b[d];
                s += diff * diff;
            }
            const double cost = std::sqrt(s);
            const double best = std::min({prev[j - 1], prev[j], cur[j - 1]});
            cur[j] = cost + best;
        }
        std::swap(prev, cur);
    }
    return prev[lb];
}

double dtw_set(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen, Pairing pairing) {
    require_dims(orig, gen);
    if (pairing == Pairing::index) {
        if (orig.r_count() != gen.r_count()) {
            throw PairingError("index pairing requires equal window counts, got " +
                               std::to_string(orig.r_count()) + " and " +
                               std::to_string(gen.r_count()));
        }
        double total = 0.0;
        for (std::size_t r = 0; r < orig.r_count(); ++r) {
            total += dtw(gen.window(r), orig.window(r));
        }
        return total / static_cast<double>(orig.r_count());
    }
    const auto nn = nearest_partners(orig, gen);
    double total = 0.0;
    for (std::size_t r = 0; r < gen.r_count(); ++r) {
        total += dtw(gen.window(r), orig.window(nn.partner[r]));
    }
    return total / static_cast<double>(gen.r_count());
}

namespace {

TimeSeriesTensor subsample(const TimeSeriesTensor& t, std::size_t cap, Rng& rng) {
    if (t.r_count() <= cap) return t;
    std::vector<std::size_t> indices(t.r_count());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    // Partial Fisher-Yates: the first `cap` slots receive the sample.
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(indices.size() - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(cap);
    return t.gather(indices);
}

struct SuiteValues {
    std::map<std::string, double> values;
    std::map<std::string, std::string> failures;
};

SuiteValues run_once(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                     const MeasureConfig& config) {
    SuiteValues out;
    const auto attempt = [&](const char* name, auto&& fn) {
        try {
            out.values[name] = fn();
        } catch (const ToolkitError& e) {
            out.failures[name] = e.what();
        }
    };
    const int max_lag = config.acf_max_lag.value_or(static_cast<int>(orig.seq_len()) - 1);
    attempt("mdd", [&] { return mdd(orig, gen, config.histogram_bins); });
    attempt("acd", [&] { return acd(orig, gen, max_lag); });
    attempt("sd", [&] { return sd(orig, gen); });
    attempt("kd", [&] { return kd(orig, gen); });

    // ED and DTW share the nearest-neighbor partners, so compute them once.
    if (config.pairing == Pairing::nearest_neighbor) {
        try {
            const auto nn = nearest_partners(orig, gen);
            out.values["ed"] = std::accumulate(nn.distance.begin(), nn.distance.end(), 0.0) /
                               static_cast<double>(nn.distance.size());
            double total = 0.0;
            for (std::size_t r = 0; r < gen.r_count(); ++r) {
                total += dtw(gen.window(r), orig.window(nn.partner[r]));
            }
            out.values["dtw"] = total / static_cast<double>(gen.r_count());
        } catch (const ToolkitError& e) {
            out.failures["ed"] = e.what();
            out.failures["dtw"] = e.what();
        }
    } else {
        attempt("ed", [&] { return ed(orig, gen, config.pairing); });
        attempt("dtw", [&] { return dtw_set(orig, gen, config.pairing); });
    }
    return out;
}

} // namespace

MeasureReport run_suite(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                        const MeasureConfig& config) {
    require_window_shape(orig, gen);
    if (config.repeats < 1) throw ParameterError("repeats must be >= 1");
    if (config.histogram_bins < 2) throw ParameterError("histogram bin count must be >= 2");
    if (config.acf_max_lag &&
        (*config.acf_max_lag < 1 ||
         static_cast<std::size_t>(*config.acf_max_lag) >= orig.seq_len())) {
        throw ParameterError("acf max lag must lie in [1, l-1]");
    }

    // Without subsampling every repeat is identical, so evaluate once and
    // replicate; the reported std is exactly 0 either way.
    const bool deterministic = !config.nn_subsample.has_value();
    std::map<std::string, std::vector<double>> samples;
    MeasureReport report;
    for (int rep = 0; rep < (deterministic ? 1 : config.repeats); ++rep) {
        SuiteValues vals;
        if (config.nn_subsample) {
            Rng rng(derive_stream(config.seed, static_cast<std::uint64_t>(rep)));
            const TimeSeriesTensor orig_s = subsample(orig, *config.nn_subsample, rng);
            const TimeSeriesTensor gen_s = subsample(gen, *config.nn_subsample, rng);
            vals = run_once(orig_s, gen_s, config);
        } else {
            vals = run_once(orig, gen, config);
        }
        for (const auto& [name, value] : vals.values) samples[name].push_back(value);
        for (const auto& [name, what] : vals.failures) report.diagnostics[name] = what;
    }
    if (deterministic) {
        for (auto& [name, xs] : samples) xs.assign(static_cast<std::size_t>(config.repeats), xs.front());
    }

    for (const auto& [name, xs] : samples) {
        if (static_cast<int>(xs.size()) != config.repeats) {
            continue;  // failed on some repeat; diagnostic already recorded
        }
        MeasureStat stat;
        stat.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        double ss = 0.0;
        for (const double x : xs) ss += (x - stat.mean) * (x - stat.mean);
        stat.std = std::sqrt(ss / static_cast<double>(xs.size()));
        report.entries[name] = stat;
    }
    return report;
}

} // namespace tsgkit

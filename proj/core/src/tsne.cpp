#include "tsgkit/tsne.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace tsgkit {

namespace tsne_detail {

Affinities conditional_affinities(const std::vector<double>& squared_distances,
                                  std::size_t count, double perplexity) {
    if (count < 2) throw ParameterError("need at least two points for affinities");
    if (squared_distances.size() != count * count) {
        throw ShapeError("squared distance matrix size mismatch");
    }
    Affinities out;
    out.conditional.assign(count * count, 0.0);
    out.achieved_perplexity.assign(count, 0.0);
    const double target_entropy = std::log(perplexity);

    std::vector<double> row(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double* d2 = squared_distances.data() + i * count;
        double beta = 1.0;
        double beta_lo = -std::numeric_limits<double>::infinity();
        double beta_hi = std::numeric_limits<double>::infinity();
        double sum = 0.0;
        double entropy = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            sum = 0.0;
            double weighted = 0.0;
            for (std::size_t j = 0; j < count; ++j) {
                const double p = j == i ? 0.0 : std::exp(-beta * d2[j]);
                row[j] = p;
                sum += p;
                weighted += p * d2[j];
            }
            if (sum <= 0.0) {
                // all mass collapsed; relax the bandwidth
                beta_hi = beta;
                beta = std::isinf(beta_lo) ? beta / 2.0 : (beta + beta_lo) / 2.0;
                continue;
            }
            entropy = std::log(sum) + beta * weighted / sum;
            const double gap = entropy - target_entropy;
            if (std::abs(gap) < 1e-7) break;
            if (gap > 0.0) {
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0 : (beta + beta_hi) / 2.0;
            } else {
                beta_hi = beta;
                beta = std::isinf(beta_lo) ? beta / 2.0 : (beta + beta_lo) / 2.0;
            }
        }
        if (sum <= 0.0) {
            // never recovered from a collapsed row: spread mass uniformly
            const double uniform = 1.0 / static_cast<double>(count - 1);
            for (std::size_t j = 0; j < count; ++j) {
                row[j] = j == i ? 0.0 : uniform;
            }
            sum = 1.0;
            entropy = std::log(static_cast<double>(count - 1));
        }
        const double inv = 1.0 / sum;
        for (std::size_t j = 0; j < count; ++j) {
            out.conditional[i * count + j] = row[j] * inv;
        }
        out.achieved_perplexity[i] = std::exp(entropy);
    }
    return out;
}

} // namespace tsne_detail

namespace {

struct CanonicalPoint {
    std::uint64_t hash = 0;
    PointLabel label = PointLabel::real;
    std::vector<double> values;
};

std::uint64_t window_hash(const double* data, std::size_t size, std::uint64_t seed) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(data);
    return splitmix64(fnv1a64(bytes, size * sizeof(double)) ^ seed);
}

std::uint64_t tensor_content_key(const TimeSeriesTensor& t, std::uint64_t seed) {
    const auto* bytes = reinterpret_cast<const unsigned char*>(t.values().data());
    return splitmix64(fnv1a64(bytes, t.size() * sizeof(double)) ^ seed);
}

// Subsample window indices with a stream keyed by the set's own content, so
// the choice does not depend on which argument position the set occupies.
std::vector<std::size_t> subsample_indices(const TimeSeriesTensor& t, std::size_t cap,
                                           std::uint64_t seed) {
    std::vector<std::size_t> indices(t.r_count());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    if (t.r_count() <= cap) return indices;
    Rng rng(tensor_content_key(t, seed));
    for (std::size_t i = 0; i < cap; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(indices.size() - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(cap);
    return indices;
}

void append_points(const TimeSeriesTensor& t, PointLabel label, std::size_t cap,
                   std::uint64_t seed, std::vector<CanonicalPoint>& points) {
    const std::size_t wsize = t.seq_len() * t.dim_count();
    for (const std::size_t r : subsample_indices(t, cap, seed)) {
        CanonicalPoint p;
        const double* w = t.values().data() + r * wsize;
        p.values.assign(w, w + wsize);
        p.hash = window_hash(w, wsize, seed);
        p.label = label;
        points.push_back(std::move(p));
    }
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& y,
                     std::size_t n) {
    // Q from the Student-t kernel over current coordinates
    double sum_q = 0.0;
    std::vector<double> q(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = y[2 * i] - y[2 * j];
            const double dy = y[2 * i + 1] - y[2 * j + 1];
            const double v = 1.0 / (1.0 + dx * dx + dy * dy);
            q[i * n + j] = v;
            q[j * n + i] = v;
            sum_q += 2.0 * v;
        }
    }
    double kl = 0.0;
    for (std::size_t idx = 0; idx < p.size(); ++idx) {
        if (p[idx] > 0.0) {
            kl += p[idx] * std::log(p[idx] / std::max(q[idx] / sum_q, 1e-300));
        }
    }
    return kl;
}

} // namespace

Embedding2D tsne_embed(const TimeSeriesTensor& orig, const TimeSeriesTensor& gen,
                       const TsneConfig& config) {
    if (config.cap < 10) throw ParameterError("subsample cap must be >= 10");
    if (config.iterations < 1) throw ParameterError("iteration count must be >= 1");
    if (orig.seq_len() * orig.dim_count() != gen.seq_len() * gen.dim_count()) {
        throw ShapeError("flattened window sizes differ between the two tensors");
    }

    std::vector<CanonicalPoint> points;
    points.reserve(std::min(orig.r_count(), config.cap) + std::min(gen.r_count(), config.cap));
    append_points(orig, PointLabel::real, config.cap, config.seed, points);
    append_points(gen, PointLabel::synthetic, config.cap, config.seed, points);

    std::sort(points.begin(), points.end(), [](const CanonicalPoint& a, const CanonicalPoint& b) {
        if (a.hash != b.hash) return a.hash < b.hash;
        const int cmp = std::memcmp(a.values.data(), b.values.data(),
                                    std::min(a.values.size(), b.values.size()) * sizeof(double));
        if (cmp != 0) return cmp < 0;
        return a.label < b.label;
    });

    const std::size_t n = points.size();
    if (!(config.perplexity > 0.0) ||
        config.perplexity >= (static_cast<double>(n) - 1.0) / 3.0) {
        throw ParameterError("perplexity must lie in (0, (point count - 1)/3)");
    }

    // Pairwise squared distances in the input space.
    const std::size_t dim = points.front().values.size();
    std::vector<double> d2(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            const double* a = points[i].values.data();
            const double* b = points[j].values.data();
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = a[d] - b[d];
                s += diff * diff;
            }
            d2[i * n + j] = s;
            d2[j * n + i] = s;
        }
    }

    const auto affinities = tsne_detail::conditional_affinities(d2, n, config.perplexity);

    // Symmetrize: P_ij = (p(j|i) + p(i|j)) / (2n), so the matrix sums to 1.
    std::vector<double> p(n * n, 0.0);
    const double norm = 1.0 / (2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            p[i * n + j] =
                (affinities.conditional[i * n + j] + affinities.conditional[j * n + i]) * norm;
        }
    }

    // Initial coordinates from content hashes (Box-Muller), scaled small.
    std::vector<double> y(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t h = points[i].hash;
        const double u1 =
            (static_cast<double>(splitmix64(h) >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = static_cast<double>(splitmix64(h + 1) >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        y[2 * i] = 1e-4 * radius * std::cos(2.0 * std::numbers::pi * u2);
        y[2 * i + 1] = 1e-4 * radius * std::sin(2.0 * std::numbers::pi * u2);
    }

    std::vector<double> velocity(2 * n, 0.0), gains(2 * n, 1.0), gradient(2 * n, 0.0);
    std::vector<double> q(n * n, 0.0);
    Embedding2D embedding;

    for (int iter = 0; iter < config.iterations; ++iter) {
        const double factor = iter < config.exaggeration_iterations ? config.exaggeration : 1.0;
        const double momentum = iter < config.momentum_switch_iteration
                                    ? config.momentum_initial
                                    : config.momentum_final;

        double sum_q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = y[2 * i] - y[2 * j];
                const double dy = y[2 * i + 1] - y[2 * j + 1];
                const double v = 1.0 / (1.0 + dx * dx + dy * dy);
                q[i * n + j] = v;
                q[j * n + i] = v;
                sum_q += 2.0 * v;
            }
        }

        std::fill(gradient.begin(), gradient.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double v = q[i * n + j];
                const double mult = (factor * p[i * n + j] - v / sum_q) * v;
                gradient[2 * i] += 4.0 * mult * (y[2 * i] - y[2 * j]);
                gradient[2 * i + 1] += 4.0 * mult * (y[2 * i + 1] - y[2 * j + 1]);
            }
        }

        for (std::size_t idx = 0; idx < 2 * n; ++idx) {
            const bool same_sign = (gradient[idx] > 0.0) == (velocity[idx] > 0.0);
            gains[idx] = std::max(0.01, same_sign ? gains[idx] * 0.8 : gains[idx] + 0.2);
            velocity[idx] = momentum * velocity[idx] -
                            config.learning_rate * gains[idx] * gradient[idx];
            y[idx] += velocity[idx];
        }

        double mean_x = 0.0, mean_y = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean_x += y[2 * i];
            mean_y += y[2 * i + 1];
        }
        mean_x /= static_cast<double>(n);
        mean_y /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[2 * i] -= mean_x;
            y[2 * i + 1] -= mean_y;
        }

        // KL against the true (non-exaggerated) affinities.
        if (iter == 0 || (iter + 1) % 50 == 0 || iter == config.iterations - 1) {
            embedding.kl_trace.push_back(kl_divergence(p, y, n));
        }
    }

    embedding.points.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        embedding.points[i] = {y[2 * i], y[2 * i + 1], points[i].label};
    }
    return embedding;
}

} // namespace tsgkit

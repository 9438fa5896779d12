#include "tsgkit/rank.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/special.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tsgkit {

void ScoreTable::validate() const {
    if (methods.size() < 2 || datasets.size() < 2) {
        throw ShapeError("score table needs at least 2 methods and 2 datasets");
    }
    if (scores.size() != methods.size() * datasets.size()) {
        throw ShapeError("score table has " + std::to_string(scores.size()) +
                         " cells, expected " + std::to_string(methods.size() * datasets.size()));
    }
    for (const double v : scores) {
        if (!std::isfinite(v)) throw NumericError("score table contains a non-finite value");
    }
}

ScoreTable ScoreTable::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path.string());

    ScoreTable table;
    std::string line;
    bool have_header = false;
    std::size_t row_number = 0;
    while (std::getline(in, line)) {
        ++row_number;
        if (line.empty() || line == "\r") continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (!have_header) {
            // header: method,<dataset names...>
            if (cells.size() < 3) {
                throw ParseError("score CSV header needs at least two dataset columns");
            }
            table.datasets.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != table.datasets.size() + 1) {
            throw ShapeError("ragged row " + std::to_string(row_number) + " in " +
                             path.string());
        }
        table.methods.push_back(cells[0]);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double value = 0.0;
            const char* b = cells[c].data();
            const auto [ptr, ec] = std::from_chars(b, b + cells[c].size(), value);
            if (ec != std::errc() || ptr != b + cells[c].size()) {
                throw ParseError("cannot parse score \"" + cells[c] + "\" at row " +
                                 std::to_string(row_number));
            }
            table.scores.push_back(value);
        }
    }
    table.validate();
    return table;
}

std::vector<double> rank_columns(const ScoreTable& table) {
    table.validate();
    const std::size_t k = table.method_count();
    const std::size_t n = table.dataset_count();
    std::vector<double> ranks(k * n, 0.0);
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < n; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return table.at(a, j) < table.at(b, j);
        });
        std::size_t pos = 0;
        while (pos < k) {
            std::size_t end = pos + 1;
            while (end < k && table.at(order[end], j) == table.at(order[pos], j)) ++end;
            // positions pos..end-1 are tied: assign the average rank
            const double avg = (static_cast<double>(pos + 1) + static_cast<double>(end)) / 2.0;
            for (std::size_t t = pos; t < end; ++t) ranks[order[t] * n + j] = avg;
            pos = end;
        }
    }
    return ranks;
}

namespace {

struct RankSums {
    std::vector<double> sums;   // per method
    double a1 = 0.0;            // sum of squared ranks
    double c1 = 0.0;            // n k (k+1)^2 / 4
    double ss_treat = 0.0;      // sum_j (Rj - n(k+1)/2)^2
};

RankSums rank_sums(const ScoreTable& table, const std::vector<double>& ranks) {
    const std::size_t k = table.method_count();
    const std::size_t n = table.dataset_count();
    RankSums out;
    out.sums.assign(k, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < n; ++j) {
            const double r = ranks[m * n + j];
            out.sums[m] += r;
            out.a1 += r * r;
        }
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    out.c1 = nd * kd * (kd + 1.0) * (kd + 1.0) / 4.0;
    const double center = nd * (kd + 1.0) / 2.0;
    for (const double rj : out.sums) out.ss_treat += (rj - center) * (rj - center);
    return out;
}

} // namespace

FriedmanResult friedman(const ScoreTable& table) {
    const auto ranks = rank_columns(table);
    const auto rs = rank_sums(table, ranks);
    const double k = static_cast<double>(table.method_count());
    const double denom = rs.a1 - rs.c1;
    FriedmanResult result;
    if (denom <= 0.0) {
        // every column fully tied
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = (k - 1.0) * rs.ss_treat / denom;
    result.p_value = chi_square_sf(result.statistic, k - 1.0);
    return result;
}

std::vector<double> conover_posthoc(const ScoreTable& table) {
    const auto ranks = rank_columns(table);
    const auto rs = rank_sums(table, ranks);
    const std::size_t k = table.method_count();
    const std::size_t n = table.dataset_count();
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    const double df = (nd - 1.0) * (kd - 1.0);
    const double denom = rs.a1 - rs.c1;
    const double t1 = denom > 0.0 ? (kd - 1.0) * rs.ss_treat / denom : 0.0;
    // LSD on within-block ranks: SE^2 = 2n(A1-C1)/df * (1 - T1/(n(k-1)))
    double se2 = 0.0;
    if (denom > 0.0) {
        se2 = 2.0 * nd * denom / df * (1.0 - t1 / (nd * (kd - 1.0)));
        se2 = std::max(se2, 0.0);
    }
    std::vector<double> p(k * k, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double gap = std::abs(rs.sums[i] - rs.sums[j]);
            double pij = 1.0;
            if (gap > 0.0) {
                pij = se2 > 0.0 ? student_t_two_sided(gap / std::sqrt(se2), df) : 0.0;
            }
            p[i * k + j] = pij;
            p[j * k + i] = pij;
        }
    }
    return p;
}

std::vector<std::vector<std::size_t>> critical_difference_tiers(
    const std::vector<double>& avg_ranks, const std::vector<double>& conover_p, double alpha) {
    const std::size_t k = avg_ranks.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return avg_ranks[a] < avg_ranks[b];
    });

    const auto indistinct = [&](std::size_t a, std::size_t b) {
        return conover_p[order[a] * k + order[b]] >= alpha;
    };

    std::vector<std::vector<std::size_t>> tiers;
    std::size_t start = 0;
    while (start < k) {
        std::size_t end = start + 1;
        while (end < k) {
            bool extends = true;
            for (std::size_t t = start; t < end && extends; ++t) {
                extends = indistinct(t, end);
            }
            if (!extends) break;
            ++end;
        }
        tiers.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                           order.begin() + static_cast<std::ptrdiff_t>(end));
        start = end;
    }
    return tiers;
}

RankAnalysis analyze_ranks(const ScoreTable& table, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("alpha must lie strictly between 0 and 1");
    }
    const auto ranks = rank_columns(table);
    const std::size_t k = table.method_count();
    const std::size_t n = table.dataset_count();

    RankAnalysis analysis;
    analysis.alpha = alpha;
    analysis.avg_ranks.assign(k, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t j = 0; j < n; ++j) analysis.avg_ranks[m] += ranks[m * n + j];
        analysis.avg_ranks[m] /= static_cast<double>(n);
    }
    const auto fr = friedman(table);
    analysis.friedman_stat = fr.statistic;
    analysis.p_value = fr.p_value;
    analysis.conover_p = conover_posthoc(table);
    analysis.tiers = critical_difference_tiers(analysis.avg_ranks, analysis.conover_p, alpha);

    analysis.rank_order.resize(k);
    std::iota(analysis.rank_order.begin(), analysis.rank_order.end(), std::size_t{0});
    std::stable_sort(analysis.rank_order.begin(), analysis.rank_order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return analysis.avg_ranks[a] < analysis.avg_ranks[b];
                     });

    // Maximal runs of rank-adjacent methods with no significant pair: the
    // bars of a critical-difference diagram.
    const auto& order = analysis.rank_order;
    for (std::size_t start = 0; start < k; ++start) {
        std::size_t end = start;
        while (end + 1 < k) {
            bool ok = true;
            for (std::size_t t = start; t <= end && ok; ++t) {
                ok = analysis.conover_p[order[t] * k + order[end + 1]] >= alpha;
            }
            if (!ok) break;
            ++end;
        }
        if (end > start) {
            const bool contained = !analysis.cliques.empty() &&
                                   analysis.cliques.back().second >= end;
            if (!contained) analysis.cliques.emplace_back(start, end);
        }
    }
    return analysis;
}

} // namespace tsgkit

#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace tsgkit {

/// Scores of k methods on n datasets; lower is better throughout.
struct ScoreTable {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    std::vector<double> scores;  // row-major k x n

    [[nodiscard]] std::size_t method_count() const { return methods.size(); }
    [[nodiscard]] std::size_t dataset_count() const { return datasets.size(); }
    [[nodiscard]] double at(std::size_t method, std::size_t dataset) const {
        return scores[method * datasets.size() + dataset];
    }

    void validate() const;
    static ScoreTable from_csv(const std::filesystem::path& path);
};

struct FriedmanResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

struct RankAnalysis {
    std::vector<double> avg_ranks;            // per method
    double friedman_stat = 0.0;
    double p_value = 1.0;
    std::vector<double> conover_p;            // row-major k x k, diagonal 1
    std::vector<std::vector<std::size_t>> tiers;    // method indices, best tier first
    std::vector<std::pair<std::size_t, std::size_t>> cliques;  // CD-diagram bars over
                                                               // rank-sorted positions
    std::vector<std::size_t> rank_order;      // method indices sorted by avg rank
    double alpha = 0.05;
};

/// Per-dataset ranks, 1 = best (lowest score); ties get averaged positions.
/// Row-major k x n, same layout as the score matrix.
std::vector<double> rank_columns(const ScoreTable& table);

/// Friedman chi-square with the standard tie correction,
/// T = (k-1) * sum_j (Rj - n(k+1)/2)^2 / (A1 - C1), df = k - 1.
/// An all-tied table yields statistic 0 and p = 1.
FriedmanResult friedman(const ScoreTable& table);

/// Conover's pairwise post-hoc comparisons: t statistics from rank-sum
/// differences with (n-1)(k-1) degrees of freedom, two-sided p-values,
/// diagonal 1. A perfectly consistent table has zero residual variance;
/// unequal rank sums then get p = 0 and equal ones p = 1.
std::vector<double> conover_posthoc(const ScoreTable& table);

/// Sort methods by average rank and group maximal runs of adjacent methods
/// whose pairwise p-values all reach alpha.
std::vector<std::vector<std::size_t>> critical_difference_tiers(
    const std::vector<double>& avg_ranks, const std::vector<double>& conover_p,
    double alpha);

/// Full analysis: ranks, Friedman, Conover, tiers, and the non-significance
/// cliques needed to draw a critical-difference diagram.
RankAnalysis analyze_ranks(const ScoreTable& table, double alpha = 0.05);

} // namespace tsgkit

#include "tsgkit/rank.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"
#include "tsgkit/special.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

using namespace tsgkit;

namespace {

ScoreTable make_table(std::vector<std::vector<double>> rows) {
    ScoreTable table;
    const std::size_t n = rows.front().size();
    for (std::size_t m = 0; m < rows.size(); ++m) {
        table.methods.push_back("M" + std::to_string(m));
        for (const double v : rows[m]) table.scores.push_back(v);
    }
    for (std::size_t j = 0; j < n; ++j) table.datasets.push_back("D" + std::to_string(j));
    return table;
}

// 3 methods x 4 datasets, A always best, B always second, C always worst.
ScoreTable dominance_table() {
    return make_table({{0.1, 0.1, 0.1, 0.1}, {0.2, 0.2, 0.2, 0.2}, {0.3, 0.3, 0.3, 0.3}});
}

// Same but one column swaps B and C, so the rank fit is imperfect.
ScoreTable near_dominance_table() {
    return make_table({{0.10, 0.11, 0.12, 0.13},
                       {0.20, 0.21, 0.22, 0.33},
                       {0.30, 0.31, 0.32, 0.23}});
}

// Test-local series/continued-fraction oracle for the chi-square survival
// function, written against long double accumulators and independent of the
// library's code path.
long double oracle_gamma_series(long double a, long double x) {
    long double term = 1.0L / a;
    long double sum = term;
    long double ap = a;
    for (int i = 0; i < 2000; ++i) {
        ap += 1.0L;
        term *= x / ap;
        sum += term;
        if (fabsl(term) < fabsl(sum) * 1e-20L) break;
    }
    return sum * expl(-x + a * logl(x) - lgammal(a));
}

long double oracle_gamma_cf(long double a, long double x) {
    long double b = x + 1.0L - a;
    long double c = 1e300L;
    long double d = 1.0L / b;
    long double h = d;
    for (int i = 1; i <= 2000; ++i) {
        const long double an = -static_cast<long double>(i) * (i - a);
        b += 2.0L;
        d = an * d + b;
        if (fabsl(d) < 1e-300L) d = 1e-300L;
        c = b + an / c;
        if (fabsl(c) < 1e-300L) c = 1e-300L;
        d = 1.0L / d;
        const long double delta = d * c;
        h *= delta;
        if (fabsl(delta - 1.0L) < 1e-20L) break;
    }
    return h * expl(-x + a * logl(x) - lgammal(a));
}

double oracle_chi2_sf(double x, double df) {
    const long double a = static_cast<long double>(df) / 2.0L;
    const long double half = static_cast<long double>(x) / 2.0L;
    if (half < a + 1.0L) return static_cast<double>(1.0L - oracle_gamma_series(a, half));
    return static_cast<double>(oracle_gamma_cf(a, half));
}

// Student-t two-sided p by adaptive Simpson quadrature of the density from
// |t| to a far cutoff; a second independent route.
double oracle_t_two_sided(double t, double df) {
    const double v = df;
    const double log_norm = std::lgamma((v + 1.0) / 2.0) - std::lgamma(v / 2.0) -
                            0.5 * std::log(v * std::acos(-1.0));
    const auto pdf = [&](double x) {
        return std::exp(log_norm - (v + 1.0) / 2.0 * std::log1p(x * x / v));
    };
    // integrate pdf on [|t|, |t| + span] with Simpson panels; the tail beyond
    // is negligible at span ~ 400 standard widths for the dfs tested here
    const double a = std::abs(t);
    const double b = a + 400.0;
    const int panels = 200000;
    const double h = (b - a) / panels;
    double sum = pdf(a) + pdf(b);
    for (int i = 1; i < panels; ++i) {
        sum += pdf(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return 2.0 * sum * h / 3.0;
}

} // namespace

TEST_CASE("rank_columns ranks ascending with average ties") {
    SECTION("strictly ordered column") {
        const ScoreTable t = make_table({{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}});
        const auto ranks = rank_columns(t);
        REQUIRE(ranks[0 * 2 + 0] == 1.0);
        REQUIRE(ranks[1 * 2 + 0] == 2.0);
        REQUIRE(ranks[2 * 2 + 0] == 3.0);
    }
    SECTION("tied column averages the positions") {
        const ScoreTable t = make_table({{0.1, 0.0}, {0.1, 0.0}, {0.3, 0.0}});
        const auto ranks = rank_columns(t);
        REQUIRE(ranks[0 * 2 + 0] == 1.5);
        REQUIRE(ranks[1 * 2 + 0] == 1.5);
        REQUIRE(ranks[2 * 2 + 0] == 3.0);
    }
    SECTION("full tie gives everyone (k+1)/2") {
        const ScoreTable t = make_table({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
        const auto ranks = rank_columns(t);
        for (const double r : ranks) REQUIRE(r == 2.5);
    }
    SECTION("rank sums per column equal k(k+1)/2 on random tables") {
        Rng rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t k = 2 + rng.next_below(8);
            const std::size_t n = 2 + rng.next_below(8);
            std::vector<std::vector<double>> rows(k, std::vector<double>(n));
            for (auto& row : rows) {
                for (double& v : row) v = std::round(rng.next_double() * 4.0) / 4.0;
            }
            const ScoreTable t = make_table(rows);
            const auto ranks = rank_columns(t);
            for (std::size_t j = 0; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t m = 0; m < k; ++m) sum += ranks[m * n + j];
                REQUIRE(sum == Catch::Approx(static_cast<double>(k * (k + 1)) / 2.0));
            }
        }
    }
}

TEST_CASE("friedman statistic") {
    SECTION("dominance table gives chi-square 8 with df 2") {
        const auto result = friedman(dominance_table());
        REQUIRE(result.statistic == Catch::Approx(8.0).epsilon(1e-12));
        // p from an independent oracle at df = 2
        REQUIRE(result.p_value == Catch::Approx(oracle_chi2_sf(8.0, 2.0)).epsilon(1e-10));
        REQUIRE(result.p_value == Catch::Approx(0.01831563888873418).epsilon(1e-10));
    }
    SECTION("all-tied table gives statistic 0 and p 1") {
        const ScoreTable t = make_table({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
        const auto result = friedman(t);
        REQUIRE(result.statistic == 0.0);
        REQUIRE(result.p_value == 1.0);
    }
    SECTION("tie-corrected value matches the frozen reference") {
        // 4 methods x 6 datasets with many ties; reference computed with an
        // independent implementation (tie-corrected, average ranks): 5.1875
        const ScoreTable t = make_table({{3, 2, 2, 3, 2, 3},
                                         {3, 0, 0, 1, 1, 3},
                                         {3, 0, 1, 3, 0, 3},
                                         {0, 1, 3, 1, 1, 1}});
        const auto result = friedman(t);
        REQUIRE(result.statistic == Catch::Approx(5.1875).epsilon(1e-12));
        REQUIRE(result.p_value ==
                Catch::Approx(0.15857119517113882).epsilon(1e-10));
    }
    SECTION("ten methods use nine degrees of freedom") {
        // full dominance over three datasets: ranks 1..10 per column, so the
        // statistic reaches its maximum n(k-1) = 27; p = sf(27, df=9)
        std::vector<std::vector<double>> rows(10, std::vector<double>(3));
        for (std::size_t m = 0; m < 10; ++m) {
            for (std::size_t j = 0; j < 3; ++j) {
                rows[m][j] = 0.1 * static_cast<double>(m + 1);
            }
        }
        const auto result = friedman(make_table(rows));
        REQUIRE(result.statistic == Catch::Approx(27.0).epsilon(1e-12));
        REQUIRE(result.p_value ==
                Catch::Approx(0.0013987676797964594).epsilon(1e-10));
        REQUIRE(result.p_value == Catch::Approx(oracle_chi2_sf(27.0, 9.0)).epsilon(1e-10));
    }
    SECTION("invariant under strictly monotone per-column transforms") {
        Rng rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t k = 3 + rng.next_below(5);
            const std::size_t n = 2 + rng.next_below(6);
            std::vector<std::vector<double>> rows(k, std::vector<double>(n));
            for (auto& row : rows) {
                for (double& v : row) v = rng.next_double();
            }
            const ScoreTable t = make_table(rows);
            auto transformed = rows;
            for (std::size_t j = 0; j < n; ++j) {
                // exp is strictly monotone; apply per column
                for (std::size_t m = 0; m < k; ++m) {
                    transformed[m][j] = std::exp(3.0 * rows[m][j]) - 1.0;
                }
            }
            const ScoreTable t2 = make_table(transformed);
            REQUIRE(friedman(t2).statistic ==
                    Catch::Approx(friedman(t).statistic).margin(1e-10));
        }
    }
    SECTION("a dominating method earns a strictly better average rank") {
        Rng rng(29);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 2 + rng.next_below(6);
            std::vector<std::vector<double>> rows(3, std::vector<double>(n));
            for (std::size_t j = 0; j < n; ++j) {
                rows[1][j] = rng.next_double();
                rows[0][j] = rows[1][j] - 0.5 - rng.next_double();  // strictly dominates
                rows[2][j] = rows[1][j] + rng.next_double();
            }
            const auto analysis = analyze_ranks(make_table(rows), 0.05);
            REQUIRE(analysis.avg_ranks[0] < analysis.avg_ranks[1]);
        }
    }
    SECTION("appending an agreeing column never raises the p-value") {
        std::vector<std::vector<double>> rows = {{0.1, 0.15, 0.2}, {0.4, 0.3, 0.5},
                                                 {0.9, 0.8, 0.7}};
        const double p3 = friedman(make_table(rows)).p_value;
        for (auto& row : rows) row.push_back(row[0]);
        const double p4 = friedman(make_table(rows)).p_value;
        REQUIRE(p4 <= p3);
    }
}

TEST_CASE("distribution functions match independent oracles to 1e-10 relative") {
    SECTION("chi-square survival function: frozen high-precision points") {
        // reference values computed with 40-digit arithmetic
        const struct { double x; double df; double sf; } points[] = {
            {0.5, 1, 0.47950012218695346},
            {1.0, 1, 0.3173105078629141},
            {2.0, 1, 0.15729920705028513},
            {8.0, 2, 0.01831563888873418},
            {0.1, 2, 0.95122942450071401},
            {4.5, 3, 0.21229028736013333},
            {1.2, 4, 0.8780986177504423},
            {10.0, 5, 0.075235246146512179},
            {3.3, 7, 0.85593304725149311},
            {16.9, 9, 0.050305190124310876},
            {21.666, 9, 0.0099999798834983211},
            {5.0, 9, 0.83430826019340755},
            {30.0, 15, 0.011921495938159695},
            {0.02, 2, 0.99004983374916805},
        };
        for (const auto& p : points) {
            CAPTURE(p.x, p.df);
            REQUIRE(chi_square_sf(p.x, p.df) == Catch::Approx(p.sf).epsilon(1e-10));
            REQUIRE(chi_square_sf(p.x, p.df) ==
                    Catch::Approx(oracle_chi2_sf(p.x, p.df)).epsilon(1e-10));
        }
    }
    SECTION("student t two-sided: frozen high-precision points") {
        const struct { double t; double df; double p; } points[] = {
            {0.5, 6, 0.63488},
            {1.0, 6, 0.35591768374958217},
            {2.0, 6, 0.092426311531675132},
            {3.5, 6, 0.012826338332805319},
            {0.3, 9, 0.77099070374152489},
            {1.7, 9, 0.12334766214382391},
            {2.2, 12, 0.048136813445022525},
            {4.0, 18, 0.00083982931740856095},
            {0.9, 27, 0.37607773553123168},
            {2.75, 27, 0.010503699691989812},
            {1.1, 81, 0.27459059435872157},
            {6.0, 81, 5.2885074294542921e-8},
            {0.05, 2, 0.96466673733312133},
            {12.0, 4, 0.00027642854850297295},
        };
        for (const auto& p : points) {
            CAPTURE(p.t, p.df);
            REQUIRE(student_t_two_sided(p.t, p.df) == Catch::Approx(p.p).epsilon(1e-10));
        }
    }
    SECTION("student t against the quadrature oracle") {
        const double cases[][2] = {{0.7, 6}, {1.3, 9}, {2.1, 12}, {3.3, 27}, {0.2, 81}};
        for (const auto& c : cases) {
            CAPTURE(c[0], c[1]);
            REQUIRE(student_t_two_sided(c[0], c[1]) ==
                    Catch::Approx(oracle_t_two_sided(c[0], c[1])).epsilon(1e-8));
        }
    }
    SECTION("regularized gamma identities") {
        Rng rng(4);
        for (int trial = 0; trial < 100; ++trial) {
            const double a = 0.5 + 10.0 * rng.next_double();
            const double x = 12.0 * rng.next_double();
            REQUIRE(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) ==
                    Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("conover post-hoc p-values") {
    SECTION("identical methods give all-ones") {
        const ScoreTable t = make_table({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
        const auto p = conover_posthoc(t);
        for (const double v : p) REQUIRE(v == 1.0);
    }
    SECTION("perfect dominance collapses the residual: off-diagonal p = 0") {
        const auto p = conover_posthoc(dominance_table());
        const std::size_t k = 3;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                REQUIRE(p[i * k + j] == (i == j ? 1.0 : 0.0));
            }
        }
    }
    SECTION("near-dominance table matches the frozen independent reference") {
        // p-values computed with an independent reference implementation of
        // the rank-transform LSD (df = (n-1)(k-1) = 6)
        const auto p = conover_posthoc(near_dominance_table());
        const std::size_t k = 3;
        REQUIRE(p[0 * k + 1] == Catch::Approx(0.012285120097469904).epsilon(1e-9));
        REQUIRE(p[0 * k + 2] == Catch::Approx(0.002578597523553991).epsilon(1e-9));
        REQUIRE(p[1 * k + 2] == Catch::Approx(0.20703125).epsilon(1e-9));
        // statistic monotone in the rank-sum gap
        REQUIRE(p[0 * k + 2] < p[0 * k + 1]);
    }
    SECTION("random 4x5 table matches the frozen independent reference") {
        const ScoreTable t = make_table({{0.388, 0.323, 0.15, 0.816, 0.379},
                                         {0.979, 0.59, 0.605, 0.638, 0.676},
                                         {0.151, 0.44, 0.24, 0.402, 0.097},
                                         {0.968, 0.215, 0.672, 0.3, 0.874}});
        const auto fr = friedman(t);
        REQUIRE(fr.statistic == Catch::Approx(4.2).epsilon(1e-12));
        REQUIRE(fr.p_value == Catch::Approx(0.24066188520961462).epsilon(1e-10));
        const auto p = conover_posthoc(t);
        const std::size_t k = 4;
        REQUIRE(p[0 * k + 1] == Catch::Approx(0.1472942950870102).epsilon(1e-9));
        REQUIRE(p[0 * k + 2] == Catch::Approx(0.6149598074442635).epsilon(1e-9));
        REQUIRE(p[0 * k + 3] == Catch::Approx(0.6149598074442635).epsilon(1e-9));
        REQUIRE(p[1 * k + 2] == Catch::Approx(0.06116322484384979).epsilon(1e-9));
        REQUIRE(p[1 * k + 3] == Catch::Approx(0.32206612200494944).epsilon(1e-9));
        REQUIRE(p[2 * k + 3] == Catch::Approx(0.32206612200494944).epsilon(1e-9));
    }
    SECTION("matrix is symmetric with unit diagonal") {
        Rng rng(8);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t k = 2 + rng.next_below(6);
            const std::size_t n = 2 + rng.next_below(6);
            std::vector<std::vector<double>> rows(k, std::vector<double>(n));
            for (auto& row : rows) {
                for (double& v : row) v = rng.next_double();
            }
            const auto p = conover_posthoc(make_table(rows));
            for (std::size_t i = 0; i < k; ++i) {
                REQUIRE(p[i * k + i] == 1.0);
                for (std::size_t j = 0; j < k; ++j) {
                    REQUIRE(p[i * k + j] == p[j * k + i]);
                    REQUIRE(p[i * k + j] >= 0.0);
                    REQUIRE(p[i * k + j] <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("critical difference tiers") {
    SECTION("all tied collapses to one tier") {
        const ScoreTable t = make_table({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
        const auto analysis = analyze_ranks(t, 0.05);
        REQUIRE(analysis.tiers.size() == 1);
        REQUIRE(analysis.tiers[0].size() == 3);
    }
    SECTION("strict dominance gives k singleton tiers") {
        const auto analysis = analyze_ranks(dominance_table(), 0.05);
        REQUIRE(analysis.tiers.size() == 3);
        for (const auto& tier : analysis.tiers) REQUIRE(tier.size() == 1);
        REQUIRE(analysis.tiers[0][0] == 0);  // best method first
        REQUIRE(analysis.tiers[2][0] == 2);
    }
    SECTION("two separated clusters form exactly two tiers") {
        // two clusters of two methods with a wide gap; within-cluster order
        // flips across datasets so the pair stays statistically indistinct
        std::vector<std::vector<double>> rows(4, std::vector<double>(8));
        Rng rng(12);
        for (std::size_t j = 0; j < 8; ++j) {
            const double flip = j % 2 == 0 ? 0.0 : 0.01;
            rows[0][j] = 0.10 + flip;
            rows[1][j] = 0.11 - flip;
            rows[2][j] = 5.10 + flip;
            rows[3][j] = 5.11 - flip;
        }
        const auto analysis = analyze_ranks(make_table(rows), 0.05);
        REQUIRE(analysis.tiers.size() == 2);
        REQUIRE(analysis.tiers[0].size() == 2);
        REQUIRE(analysis.tiers[1].size() == 2);
    }
    SECTION("rank-sum identity: average ranks mean to (k+1)/2") {
        Rng rng(19);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t k = 2 + rng.next_below(7);
            const std::size_t n = 2 + rng.next_below(7);
            std::vector<std::vector<double>> rows(k, std::vector<double>(n));
            for (auto& row : rows) {
                for (double& v : row) v = std::round(rng.next_double() * 3.0);
            }
            const auto analysis = analyze_ranks(make_table(rows), 0.05);
            const double sum = std::accumulate(analysis.avg_ranks.begin(),
                                               analysis.avg_ranks.end(), 0.0);
            REQUIRE(sum == Catch::Approx(static_cast<double>(k * (k + 1)) / 2.0)
                               .epsilon(1e-12));
        }
    }
}

TEST_CASE("score table CSV") {
    const auto path = std::filesystem::temp_directory_path() / "tsgkit_scores.csv";
    SECTION("round trip through the expected layout") {
        std::ofstream(path) << "method,Stock,Energy,Air\n"
                               "gan_a,0.5,0.25,0.125\n"
                               "gan_b,0.75,0.5,0.25\n";
        const ScoreTable t = ScoreTable::from_csv(path);
        REQUIRE(t.methods == std::vector<std::string>{"gan_a", "gan_b"});
        REQUIRE(t.datasets == std::vector<std::string>{"Stock", "Energy", "Air"});
        REQUIRE(t.at(1, 2) == 0.25);
    }
    SECTION("bad cells and ragged rows are rejected") {
        std::ofstream(path) << "method,A,B\nx,1,oops\ny,2,3\n";
        REQUIRE_THROWS_AS(ScoreTable::from_csv(path), ParseError);
        std::ofstream(path) << "method,A,B\nx,1\ny,2,3\n";
        REQUIRE_THROWS_AS(ScoreTable::from_csv(path), ShapeError);
    }
    SECTION("tables below 2x2 are rejected") {
        std::ofstream(path) << "method,A,B\nx,1,2\n";
        REQUIRE_THROWS_AS(ScoreTable::from_csv(path), ShapeError);
    }
}

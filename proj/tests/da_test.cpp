#include "tsgkit/da.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/rng.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>

using namespace tsgkit;

namespace {

TimeSeriesTensor random_tensor(std::uint64_t seed, std::size_t r, std::size_t l,
                               std::size_t n, double center = 0.0) {
    Rng rng(seed);
    std::vector<double> data(r * l * n);
    for (double& v : data) v = center + rng.next_double(-1.0, 1.0);
    return {std::move(data), r, l, n};
}

DomainData make_domain(std::size_t source_train, std::size_t hist, std::size_t gt,
                       std::size_t l = 6, std::size_t n = 2) {
    return {random_tensor(1, source_train, l, n),
            random_tensor(2, std::max<std::size_t>(source_train / 9, 1), l, n),
            random_tensor(3, hist, l, n),
            random_tensor(4, gt, l, n),
            "source",
            "target"};
}

std::vector<std::vector<double>> sorted_windows(const TimeSeriesTensor& t) {
    std::vector<std::vector<double>> windows(t.r_count());
    const std::size_t wsize = t.seq_len() * t.dim_count();
    for (std::size_t r = 0; r < t.r_count(); ++r) {
        const double* w = t.values().data() + r * wsize;
        windows[r].assign(w, w + wsize);
    }
    std::sort(windows.begin(), windows.end());
    return windows;
}

} // namespace

TEST_CASE("scenario size identities") {
    SECTION("fixed example: 900 source, 100 historical") {
        const DomainData d = make_domain(900, 100, 901);
        REQUIRE(build_single(d).training_set.r_count() == 900);
        REQUIRE(build_cross(d, 5).training_set.r_count() == 1000);
        REQUIRE(build_reference(d).training_set.r_count() == 100);
    }
    SECTION("randomized identities") {
        Rng rng(6);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t src = 2 + rng.next_below(60);
            const std::size_t hist = 1 + rng.next_below(20);
            const std::size_t gt = hist + 1 + rng.next_below(40);
            const DomainData d = make_domain(src, hist, gt);
            CAPTURE(src, hist, gt);
            REQUIRE(build_single(d).training_set.r_count() == src);
            REQUIRE(build_cross(d, trial).training_set.r_count() == src + hist);
            REQUIRE(build_reference(d).training_set.r_count() == hist);
        }
    }
    SECTION("cross training multiset = single plus reference") {
        const DomainData d = make_domain(40, 7, 30);
        const auto cross = build_cross(d, 11);
        auto expected = sorted_windows(d.source_train.concat(d.target_hist));
        REQUIRE(sorted_windows(cross.training_set) == expected);
        // and differs from reference by exactly the source windows
        REQUIRE(cross.training_set.r_count() - build_reference(d).training_set.r_count() ==
                d.source_train.r_count());
    }
    SECTION("every scenario evaluates against the target ground truth") {
        const DomainData d = make_domain(20, 5, 25);
        REQUIRE(build_single(d).eval_gt.values() == d.target_gt.values());
        REQUIRE(build_cross(d, 0).eval_gt.values() == d.target_gt.values());
        REQUIRE(build_reference(d).eval_gt.values() == d.target_gt.values());
    }
}

TEST_CASE("domain data validation") {
    SECTION("mismatched dimension count") {
        DomainData d = {random_tensor(1, 10, 6, 2), random_tensor(2, 4, 6, 2),
                        random_tensor(3, 3, 6, 3), random_tensor(4, 9, 6, 3),
                        "s", "t"};
        REQUIRE_THROWS_AS(build_single(d), ShapeError);
    }
    SECTION("historical slice must be smaller than the ground truth") {
        DomainData d = {random_tensor(1, 10, 6, 2), random_tensor(2, 4, 6, 2),
                        random_tensor(3, 9, 6, 2), random_tensor(4, 9, 6, 2),
                        "s", "t"};
        REQUIRE_THROWS_AS(build_reference(d), ShapeError);
    }
}

TEST_CASE("split_domain partitions the target") {
    SECTION("1000 windows at 0.1 give 100/900") {
        const TimeSeriesTensor full = random_tensor(9, 1000, 4, 1);
        const auto [hist, gt] = split_domain(full, 0.1, 3);
        REQUIRE(hist.r_count() == 100);
        REQUIRE(gt.r_count() == 900);
        REQUIRE(sorted_windows(hist.concat(gt)) == sorted_windows(full));
    }
    SECTION("floor on tiny inputs: 3 windows at 0.5 give 1/2") {
        const TimeSeriesTensor full = random_tensor(10, 3, 4, 1);
        const auto [hist, gt] = split_domain(full, 0.5, 3);
        REQUIRE(hist.r_count() == 1);
        REQUIRE(gt.r_count() == 2);
    }
    SECTION("degenerate fractions are split errors") {
        const TimeSeriesTensor full = random_tensor(11, 10, 4, 1);
        // floor semantics: the reachable empty side is the historical slice
        REQUIRE_THROWS_AS(split_domain(full, 0.0001, 0), SplitError);
        REQUIRE_THROWS_AS(split_domain(full, 1.0, 0), ParameterError);
        const auto [hist, gt] = split_domain(full, 0.999, 0);
        REQUIRE(hist.r_count() == 9);
        REQUIRE(gt.r_count() == 1);
    }
    SECTION("seeded: same seed same partition") {
        const TimeSeriesTensor full = random_tensor(12, 50, 4, 1);
        const auto [h1, g1] = split_domain(full, 0.2, 7);
        const auto [h2, g2] = split_domain(full, 0.2, 7);
        REQUIRE(h1.values() == h2.values());
        REQUIRE(g1.values() == g2.values());
    }
}

TEST_CASE("evaluate_da") {
    const DomainData d = make_domain(30, 6, 24);
    const DaScenario scenario = build_single(d);
    MeasureConfig config;
    config.repeats = 1;

    SECTION("generated equal to ground truth gives the all-zero report") {
        const MeasureReport report = evaluate_da(d.target_gt, scenario, config);
        REQUIRE(report.entries.size() == 6);
        for (const auto& [name, stat] : report.entries) {
            CAPTURE(name);
            REQUIRE(stat.mean == 0.0);
        }
    }
    SECTION("source-like output scores worse than the ground truth baseline") {
        const TimeSeriesTensor shifted = random_tensor(77, 24, 6, 2, 10.0);
        const MeasureReport far = evaluate_da(shifted, scenario, config);
        const MeasureReport base = evaluate_da(d.target_gt, scenario, config);
        for (const char* name : {"mdd", "ed", "dtw"}) {
            CAPTURE(name);
            REQUIRE(far.entries.at(name).mean > base.entries.at(name).mean);
        }
    }
    SECTION("the scenario kind does not change the evaluation") {
        const TimeSeriesTensor gen = random_tensor(55, 24, 6, 2);
        const MeasureReport single = evaluate_da(gen, build_single(d), config);
        const MeasureReport cross = evaluate_da(gen, build_cross(d, 1), config);
        const MeasureReport reference = evaluate_da(gen, build_reference(d), config);
        REQUIRE(single.entries.at("ed").mean == cross.entries.at("ed").mean);
        REQUIRE(single.entries.at("dtw").mean == reference.entries.at("dtw").mean);
        REQUIRE(single.entries.at("mdd").mean == reference.entries.at("mdd").mean);
    }
    SECTION("shape mismatch is rejected") {
        const TimeSeriesTensor wrong = random_tensor(56, 24, 5, 2);
        REQUIRE_THROWS_AS(evaluate_da(wrong, scenario, config), ShapeError);
    }
}

TEST_CASE("manifest round trip") {
    DaManifest manifest;
    manifest.kind = DaKind::cross;
    manifest.source_name = "TJ";
    manifest.target_name = "BJ";
    manifest.training_path = "/tmp/training.tsgt";
    manifest.eval_gt_path = "/tmp/gt.tsgt";
    manifest.hist_fraction = 0.1;
    manifest.seed = 99;
    const auto path = std::filesystem::temp_directory_path() / "tsgkit_manifest.json";
    save_manifest(manifest, path);
    const DaManifest back = load_manifest(path);
    REQUIRE(back.kind == DaKind::cross);
    REQUIRE(back.source_name == "TJ");
    REQUIRE(back.target_name == "BJ");
    REQUIRE(back.training_path == manifest.training_path);
    REQUIRE(back.eval_gt_path == manifest.eval_gt_path);
    REQUIRE(back.hist_fraction == 0.1);
    REQUIRE(back.seed == 99);
}

TEST_CASE("shipped domain presets") {
    const auto presets = da_presets();
    REQUIRE(presets.size() == 3);

    REQUIRE(presets[0].dataset == "HAPT");
    REQUIRE(presets[0].source == "User 14");
    REQUIRE(presets[0].targets ==
            std::vector<std::string>{"User 0", "User 23", "User 18", "User 52", "User 20"});
    REQUIRE(presets[0].note == "walking activity only");

    REQUIRE(presets[1].dataset == "Air");
    REQUIRE(presets[1].source == "TJ");
    REQUIRE(presets[1].targets == std::vector<std::string>{"BJ", "GZ", "SZ"});

    REQUIRE(presets[2].dataset == "Boiler");
    REQUIRE(presets[2].source == "Boiler 1");
    REQUIRE(presets[2].targets == std::vector<std::string>{"Boiler 2", "Boiler 3"});
}

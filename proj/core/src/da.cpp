#include "tsgkit/da.hpp"

#include "tsgkit/errors.hpp"
#include "tsgkit/preprocess.hpp"
#include "tsgkit/rng.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

namespace tsgkit {

void DomainData::validate() const {
    const auto check = [&](const TimeSeriesTensor& t, const char* name) {
        if (!source_train.same_window_shape(t)) {
            throw ShapeError(std::string("domain tensors disagree on window shape: ") + name +
                             " has (" + std::to_string(t.seq_len()) + ", " +
                             std::to_string(t.dim_count()) + "), source train has (" +
                             std::to_string(source_train.seq_len()) + ", " +
                             std::to_string(source_train.dim_count()) + ")");
        }
    };
    check(source_test, "source test");
    check(target_hist, "target historical");
    check(target_gt, "target ground truth");
    if (target_hist.r_count() >= target_gt.r_count()) {
        throw ShapeError("target historical slice (" + std::to_string(target_hist.r_count()) +
                         " windows) must be smaller than the ground truth (" +
                         std::to_string(target_gt.r_count()) + ")");
    }
}

DaScenario build_single(const DomainData& data) {
    data.validate();
    return {DaKind::single, data.source_train, data.target_gt, data.source_name,
            data.target_name};
}

DaScenario build_cross(const DomainData& data, std::uint64_t seed) {
    data.validate();
    if (data.target_hist.r_count() == 0) {
        throw DegenerateError("cross DA requires a non-empty target historical slice");
    }
    TimeSeriesTensor combined = data.source_train.concat(data.target_hist);
    return {DaKind::cross, shuffle_windows(combined, seed), data.target_gt, data.source_name,
            data.target_name};
}

DaScenario build_reference(const DomainData& data) {
    data.validate();
    if (data.target_hist.r_count() == 0) {
        throw DegenerateError("reference DA requires a non-empty target historical slice");
    }
    return {DaKind::reference, data.target_hist, data.target_gt, data.source_name,
            data.target_name};
}

std::pair<TimeSeriesTensor, TimeSeriesTensor> split_domain(const TimeSeriesTensor& target_full,
                                                           double hist_fraction,
                                                           std::uint64_t seed) {
    if (!(hist_fraction > 0.0 && hist_fraction < 1.0)) {
        throw ParameterError("historical fraction must lie strictly between 0 and 1");
    }
    const TimeSeriesTensor shuffled = shuffle_windows(target_full, seed);
    const std::size_t r = shuffled.r_count();
    const std::size_t hist_count =
        static_cast<std::size_t>(std::floor(hist_fraction * static_cast<double>(r)));
    if (hist_count == 0 || hist_count == r) {
        throw SplitError("historical fraction leaves an empty side for R=" + std::to_string(r));
    }
    std::vector<std::size_t> front(hist_count), back(r - hist_count);
    for (std::size_t i = 0; i < hist_count; ++i) front[i] = i;
    for (std::size_t i = hist_count; i < r; ++i) back[i - hist_count] = i;
    return {shuffled.gather(front), shuffled.gather(back)};
}

MeasureReport evaluate_da(const TimeSeriesTensor& generated, const DaScenario& scenario,
                          const MeasureConfig& config) {
    if (!generated.same_window_shape(scenario.eval_gt)) {
        throw ShapeError("generated tensor window shape (" +
                         std::to_string(generated.seq_len()) + ", " +
                         std::to_string(generated.dim_count()) +
                         ") does not match the ground truth (" +
                         std::to_string(scenario.eval_gt.seq_len()) + ", " +
                         std::to_string(scenario.eval_gt.dim_count()) + ")");
    }
    return run_suite(scenario.eval_gt, generated, config);
}

const char* da_kind_name(DaKind kind) {
    switch (kind) {
        case DaKind::single: return "single";
        case DaKind::cross: return "cross";
        case DaKind::reference: return "reference";
    }
    return "single";
}

DaKind da_kind_from_name(const std::string& name) {
    if (name == "single") return DaKind::single;
    if (name == "cross") return DaKind::cross;
    if (name == "reference") return DaKind::reference;
    throw ParseError("unknown DA scenario kind: " + name);
}

void save_manifest(const DaManifest& manifest, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["kind"] = da_kind_name(manifest.kind);
    doc["source"] = manifest.source_name;
    doc["target"] = manifest.target_name;
    doc["training_tensor"] = manifest.training_path.string();
    doc["eval_gt_tensor"] = manifest.eval_gt_path.string();
    doc["hist_fraction"] = manifest.hist_fraction;
    doc["seed"] = manifest.seed;
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
}

DaManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed manifest " + path.string() + ": " + e.what());
    }
    DaManifest manifest;
    try {
        manifest.kind = da_kind_from_name(doc.at("kind").get<std::string>());
        manifest.source_name = doc.at("source").get<std::string>();
        manifest.target_name = doc.at("target").get<std::string>();
        manifest.training_path = doc.at("training_tensor").get<std::string>();
        manifest.eval_gt_path = doc.at("eval_gt_tensor").get<std::string>();
        manifest.hist_fraction = doc.at("hist_fraction").get<double>();
        manifest.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + path.string() + " is missing fields: " + e.what());
    }
    return manifest;
}

std::span<const DaPreset> da_presets() {
    static const std::array<DaPreset, 3> presets = {{
        {"HAPT", "user", "User 14", {"User 0", "User 23", "User 18", "User 52", "User 20"},
         "walking activity only"},
        {"Air", "city", "TJ", {"BJ", "GZ", "SZ"}, ""},
        {"Boiler", "machine", "Boiler 1", {"Boiler 2", "Boiler 3"}, ""},
    }};
    return presets;
}

} // namespace tsgkit

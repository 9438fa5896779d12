#pragma once

#include "tsgkit/measures.hpp"
#include "tsgkit/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tsgkit {

/// The four tensors of a domain-adaptation setup: source train/test and the
/// target's historical/ground-truth splits. All share the window shape, and
/// the historical slice is the smaller target portion.
struct DomainData {
    TimeSeriesTensor source_train;
    TimeSeriesTensor source_test;
    TimeSeriesTensor target_hist;
    TimeSeriesTensor target_gt;
    std::string source_name;
    std::string target_name;

    void validate() const;
};

enum class DaKind { single, cross, reference };

/// An assembled evaluation scenario: what the generator trains on and the
/// target ground truth its output is judged against.
struct DaScenario {
    DaKind kind = DaKind::single;
    TimeSeriesTensor training_set;
    TimeSeriesTensor eval_gt;
    std::string source_name;
    std::string target_name;
};

/// Train on source only.
DaScenario build_single(const DomainData& data);

/// Train on source plus the target's historical slice, shuffled together.
DaScenario build_cross(const DomainData& data, std::uint64_t seed);

/// Train on the target's historical slice only.
DaScenario build_reference(const DomainData& data);

/// Seeded shuffle, then the front fraction becomes the historical slice and
/// the remainder the ground truth.
std::pair<TimeSeriesTensor, TimeSeriesTensor> split_domain(const TimeSeriesTensor& target_full,
                                                           double hist_fraction,
                                                           std::uint64_t seed);

/// Run the measure suite with the scenario's ground truth as the original.
MeasureReport evaluate_da(const TimeSeriesTensor& generated, const DaScenario& scenario,
                          const MeasureConfig& config);

const char* da_kind_name(DaKind kind);
DaKind da_kind_from_name(const std::string& name);

/// Scenario manifest: the file contract handed to external generators.
struct DaManifest {
    DaKind kind = DaKind::single;
    std::string source_name;
    std::string target_name;
    std::filesystem::path training_path;
    std::filesystem::path eval_gt_path;
    double hist_fraction = 0.1;
    std::uint64_t seed = 0;
};

void save_manifest(const DaManifest& manifest, const std::filesystem::path& path);
DaManifest load_manifest(const std::filesystem::path& path);

/// Shipped domain-attribute presets for the three DA-ready datasets.
struct DaPreset {
    std::string dataset;
    std::string domain_attribute;
    std::string source;
    std::vector<std::string> targets;
    std::string note;
};
std::span<const DaPreset> da_presets();

} // namespace tsgkit

#pragma once

#include "tsgkit/distribution.hpp"
#include "tsgkit/measures.hpp"
#include "tsgkit/rank.hpp"
#include "tsgkit/sine.hpp"
#include "tsgkit/tsne.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace tsgkit {

/// Everything needed to re-run a command: echoed config, seeds, and digests
/// of the input files. Serialized alongside every output. Deliberately free
/// of timestamps so identical runs produce identical bytes.
struct Provenance {
    std::string command;
    std::map<std::string, std::string> config;
    std::map<std::string, std::string> input_digests;  // path -> fnv1a64 hex
    std::uint64_t seed = 0;
    std::string version;
};

void write_provenance(const Provenance& provenance, const std::filesystem::path& path);

/// Measure report as {"measures": {name: {mean, std}}, ...} plus the
/// provenance block.
void write_measure_report(const MeasureReport& report, const Provenance& provenance,
                          const std::filesystem::path& path);
MeasureReport read_measure_report(const std::filesystem::path& path);

/// Merge externally computed entries (e.g. model-based measures produced by
/// another tool) into a report; `extra` wins on name collisions.
MeasureReport merge_reports(MeasureReport base, const MeasureReport& extra);

/// Robustness table: CSV with one row per scenario, and JSON with provenance.
void write_robustness_csv(const RobustnessTable& table, const std::filesystem::path& path);
void write_robustness_json(const RobustnessTable& table, const Provenance& provenance,
                           const std::filesystem::path& path);

/// Embedding as x,y,label CSV; distribution as position,density,label CSV.
void write_embedding_csv(const Embedding2D& embedding, const std::filesystem::path& path);
void write_distribution_csv(const DistributionData& data, const std::filesystem::path& path);

/// Rank analysis as JSON plus a (method, avg_rank, tier) CSV for external
/// critical-difference plotting.
void write_rank_analysis_json(const RankAnalysis& analysis, const ScoreTable& table,
                              const Provenance& provenance, const std::filesystem::path& path);
void write_rank_tiers_csv(const RankAnalysis& analysis, const ScoreTable& table,
                          const std::filesystem::path& path);

} // namespace tsgkit

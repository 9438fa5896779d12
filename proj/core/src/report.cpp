#include "tsgkit/report.hpp"

#include "tsgkit/errors.hpp"

#include <charconv>
#include <fstream>

#include <nlohmann/json.hpp>

namespace tsgkit {

namespace {

nlohmann::json provenance_json(const Provenance& p) {
    nlohmann::json doc;
    doc["command"] = p.command;
    doc["version"] = p.version;
    doc["seed"] = p.seed;
    doc["config"] = p.config;
    doc["inputs"] = p.input_digests;
    return doc;
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::string csv_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return {buf, ptr};
}

} // namespace

void write_provenance(const Provenance& provenance, const std::filesystem::path& path) {
    write_json(provenance_json(provenance), path);
}

void write_measure_report(const MeasureReport& report, const Provenance& provenance,
                          const std::filesystem::path& path) {
    nlohmann::json doc;
    nlohmann::json measures = nlohmann::json::object();
    for (const auto& [name, stat] : report.entries) {
        measures[name] = {{"mean", stat.mean}, {"std", stat.std}};
    }
    doc["measures"] = measures;
    if (!report.diagnostics.empty()) doc["diagnostics"] = report.diagnostics;
    if (report.wall_clock_seconds) doc["wall_clock_seconds"] = *report.wall_clock_seconds;
    doc["provenance"] = provenance_json(provenance);
    write_json(doc, path);
}

MeasureReport read_measure_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed report " + path.string() + ": " + e.what());
    }
    MeasureReport report;
    try {
        for (const auto& [name, stat] : doc.at("measures").items()) {
            report.entries[name] = {stat.at("mean").get<double>(), stat.at("std").get<double>()};
        }
        if (doc.contains("diagnostics")) {
            for (const auto& [name, msg] : doc.at("diagnostics").items()) {
                report.diagnostics[name] = msg.get<std::string>();
            }
        }
        if (doc.contains("wall_clock_seconds")) {
            report.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("report " + path.string() + " is missing fields: " + e.what());
    }
    return report;
}

MeasureReport merge_reports(MeasureReport base, const MeasureReport& extra) {
    for (const auto& [name, stat] : extra.entries) base.entries[name] = stat;
    for (const auto& [name, msg] : extra.diagnostics) base.diagnostics[name] = msg;
    if (extra.wall_clock_seconds) base.wall_clock_seconds = extra.wall_clock_seconds;
    return base;
}

namespace {

const char* const kRobustnessColumns[6] = {"mdd", "acd", "sd", "kd", "ed", "dtw"};

} // namespace

void write_robustness_csv(const RobustnessTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "input,shape,MDD,ACD,SD,KD,ED,DTW\n";
    for (const auto& row : table.rows) {
        out << row.scenario << ",\"(" << table.r_count << ", " << table.seq_len << ", "
            << table.dim_count << ")\"";
        for (const char* name : kRobustnessColumns) {
            out << ',';
            const auto it = row.measures.find(name);
            if (it != row.measures.end()) out << csv_double(it->second.mean);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_robustness_json(const RobustnessTable& table, const Provenance& provenance,
                           const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["shape"] = {table.r_count, table.seq_len, table.dim_count};
    doc["shared_params"] = table.shared_params;
    doc["pairing"] = table.pairing == Pairing::nearest_neighbor ? "nearest-neighbor" : "index";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json entry;
        entry["input"] = row.scenario;
        nlohmann::json measures = nlohmann::json::object();
        for (const auto& [name, stat] : row.measures) {
            measures[name] = {{"mean", stat.mean}, {"std", stat.std}};
        }
        entry["measures"] = measures;
        rows.push_back(entry);
    }
    doc["rows"] = rows;
    doc["provenance"] = provenance_json(provenance);
    write_json(doc, path);
}

void write_embedding_csv(const Embedding2D& embedding, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "x,y,label\n";
    for (const auto& point : embedding.points) {
        out << csv_double(point.x) << ',' << csv_double(point.y) << ','
            << (point.label == PointLabel::real ? "real" : "synthetic") << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_distribution_csv(const DistributionData& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "position,density,label\n";
    for (std::size_t i = 0; i < data.position.size(); ++i) {
        out << csv_double(data.position[i]) << ',' << csv_double(data.real[i]) << ",real\n";
    }
    for (std::size_t i = 0; i < data.position.size(); ++i) {
        out << csv_double(data.position[i]) << ',' << csv_double(data.synthetic[i])
            << ",synthetic\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_rank_analysis_json(const RankAnalysis& analysis, const ScoreTable& table,
                              const Provenance& provenance, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["alpha"] = analysis.alpha;
    doc["friedman_statistic"] = analysis.friedman_stat;
    doc["p_value"] = analysis.p_value;
    nlohmann::json ranks = nlohmann::json::object();
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        ranks[table.methods[m]] = analysis.avg_ranks[m];
    }
    doc["avg_ranks"] = ranks;
    doc["conover_p"] = analysis.conover_p;
    nlohmann::json tiers = nlohmann::json::array();
    for (const auto& tier : analysis.tiers) {
        nlohmann::json names = nlohmann::json::array();
        for (const std::size_t m : tier) names.push_back(table.methods[m]);
        tiers.push_back(names);
    }
    doc["tiers"] = tiers;
    nlohmann::json cliques = nlohmann::json::array();
    for (const auto& [lo, hi] : analysis.cliques) {
        nlohmann::json names = nlohmann::json::array();
        for (std::size_t p = lo; p <= hi; ++p) {
            names.push_back(table.methods[analysis.rank_order[p]]);
        }
        cliques.push_back(names);
    }
    doc["cliques"] = cliques;
    doc["provenance"] = provenance_json(provenance);
    write_json(doc, path);
}

void write_rank_tiers_csv(const RankAnalysis& analysis, const ScoreTable& table,
                          const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "method,avg_rank,tier\n";
    std::vector<std::size_t> tier_of(table.methods.size(), 0);
    for (std::size_t t = 0; t < analysis.tiers.size(); ++t) {
        for (const std::size_t m : analysis.tiers[t]) tier_of[m] = t + 1;
    }
    for (const std::size_t m : analysis.rank_order) {
        out << table.methods[m] << ',' << csv_double(analysis.avg_ranks[m]) << ','
            << tier_of[m] << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace tsgkit

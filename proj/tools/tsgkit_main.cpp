// Command-line front end: reproducible preprocessing, evaluation, robustness,
// domain-adaptation scenarios, ranking, and plot-data export. Every command
// writes a provenance record next to its outputs.

#include "tsgkit/da.hpp"
#include "tsgkit/distribution.hpp"
#include "tsgkit/errors.hpp"
#include "tsgkit/measures.hpp"
#include "tsgkit/preprocess.hpp"
#include "tsgkit/rank.hpp"
#include "tsgkit/registry.hpp"
#include "tsgkit/report.hpp"
#include "tsgkit/sine.hpp"
#include "tsgkit/tensor_io.hpp"
#include "tsgkit/tsne.hpp"
#include "tsgkit/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace tsgkit;

namespace {

nlohmann::json load_config_file(const std::string& path) {
    if (path.empty()) return nlohmann::json::object();
    std::ifstream in(path);
    if (!in) throw IoError("input not found: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed config " + path + ": " + e.what());
    }
    return doc;
}

// Flags override config-file values: a config value applies only when the
// flag was not given on the command line.
template <typename T>
void merge_option(const CLI::App& cmd, const std::string& flag, const nlohmann::json& section,
                  const std::string& key, T& value) {
    if (cmd.get_option(flag)->count() > 0) return;
    if (!section.contains(key)) return;
    try {
        value = section.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config key \"" + key + "\": " + e.what());
    }
}

nlohmann::json config_section(const nlohmann::json& config, const std::string& command) {
    if (config.contains(command) && config.at(command).is_object()) {
        return config.at(command);
    }
    return nlohmann::json::object();
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());
    return dir;
}

Pairing pairing_from_name(const std::string& name) {
    if (name == "nearest-neighbor" || name == "nn") return Pairing::nearest_neighbor;
    if (name == "index") return Pairing::index;
    throw ParseError("unknown pairing \"" + name + "\" (expected nearest-neighbor or index)");
}

struct MeasureFlags {
    int bins = 50;
    int acf_max_lag = 0;  // 0 = default l-1
    std::string pairing = "nearest-neighbor";
    int repeats = 5;
    std::size_t nn_subsample = 0;  // 0 = off

    void attach(CLI::App* cmd) {
        cmd->add_option("--bins", bins, "histogram bins for MDD");
        cmd->add_option("--acf-max-lag", acf_max_lag, "ACD lag cap (0 = l-1)");
        cmd->add_option("--pairing", pairing, "ED/DTW pairing: nearest-neighbor or index");
        cmd->add_option("--repeats", repeats, "measure suite repeats");
        cmd->add_option("--nn-subsample", nn_subsample,
                        "cap windows per side, redrawn each repeat (0 = off)");
    }
    void merge(const CLI::App& cmd, const nlohmann::json& section) {
        merge_option(cmd, "--bins", section, "bins", bins);
        merge_option(cmd, "--acf-max-lag", section, "acf_max_lag", acf_max_lag);
        merge_option(cmd, "--pairing", section, "pairing", pairing);
        merge_option(cmd, "--repeats", section, "repeats", repeats);
        merge_option(cmd, "--nn-subsample", section, "nn_subsample", nn_subsample);
    }
    [[nodiscard]] MeasureConfig to_config(std::uint64_t seed) const {
        MeasureConfig config;
        config.histogram_bins = bins;
        if (acf_max_lag > 0) config.acf_max_lag = acf_max_lag;
        config.pairing = pairing_from_name(pairing);
        config.repeats = repeats;
        if (nn_subsample > 0) config.nn_subsample = nn_subsample;
        config.seed = seed;
        return config;
    }
    void describe(std::map<std::string, std::string>& into) const {
        into["bins"] = std::to_string(bins);
        into["acf_max_lag"] = acf_max_lag > 0 ? std::to_string(acf_max_lag) : "l-1";
        into["pairing"] = pairing;
        into["repeats"] = std::to_string(repeats);
        if (nn_subsample > 0) into["nn_subsample"] = std::to_string(nn_subsample);
    }
};

Provenance make_provenance(const std::string& command, std::uint64_t seed) {
    Provenance p;
    p.command = command;
    p.version = kVersion;
    p.seed = seed;
    return p;
}

int run_datasets() {
    std::cout << "name,R,l,N,domain\n";
    for (const auto& meta : registry()) {
        std::cout << meta.name << ',' << meta.r_count << ',' << meta.seq_len << ','
                  << meta.dim_count << ',' << meta.domain << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-series generation benchmark toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    app.add_option("--out", out_dir, "output directory")->envname("TSGKIT_OUT");
    app.add_option("--seed", seed, "global seed");

    // ---- preprocess ----
    auto* cmd_preprocess = app.add_subcommand(
        "preprocess", "segment, shuffle, split, and normalize a raw CSV series");
    std::string pre_input;
    bool pre_header = false;
    std::size_t pre_seq_len = 0;
    std::size_t pre_stride = 1;
    double pre_ratio = 0.9;
    bool pre_no_normalize = false;
    std::size_t pre_acf_max_lag = 0;
    cmd_preprocess->add_option("input", pre_input, "raw CSV file")->required();
    cmd_preprocess->add_flag("--header", pre_header, "first CSV line is a header");
    cmd_preprocess->add_option("--seq-len", pre_seq_len, "window length l (0 = auto via ACF)");
    cmd_preprocess->add_option("--stride", pre_stride, "window stride");
    cmd_preprocess->add_option("--split-ratio", pre_ratio, "train fraction");
    cmd_preprocess->add_flag("--no-normalize", pre_no_normalize, "skip [0,1] normalization");
    cmd_preprocess->add_option("--acf-max-lag", pre_acf_max_lag,
                               "lag cap for auto period detection (0 = default)");

    // ---- evaluate ----
    auto* cmd_evaluate =
        app.add_subcommand("evaluate", "run the measure suite on two tensor files");
    std::string eval_orig, eval_gen, eval_merge;
    MeasureFlags eval_flags;
    cmd_evaluate->add_option("original", eval_orig, "original tensor (TSGT or long CSV)")
        ->required();
    cmd_evaluate->add_option("generated", eval_gen, "generated tensor (TSGT or long CSV)")
        ->required();
    eval_flags.attach(cmd_evaluate);
    cmd_evaluate->add_option("--merge", eval_merge,
                             "report JSON with externally computed entries to merge");

    // ---- robustness ----
    auto* cmd_robustness = app.add_subcommand(
        "robustness", "sine-wave scenario table: identical vs random sampling");
    std::size_t rob_seq_len = 24;
    std::size_t rob_r_count = 10000;
    std::size_t rob_dims = 5;
    bool rob_shared = false;
    MeasureFlags rob_flags;
    cmd_robustness->add_option("--seq-len", rob_seq_len, "window length (24 or 125 canonical)");
    cmd_robustness->add_option("--r-count", rob_r_count, "windows per dataset");
    cmd_robustness->add_option("--dim-count", rob_dims, "dimensions per window");
    cmd_robustness->add_flag("--shared-params", rob_shared,
                             "share (eta, theta) across dimensions within a window");
    rob_flags.attach(cmd_robustness);

    // ---- da ----
    auto* cmd_da = app.add_subcommand("da", "domain-adaptation scenarios");
    cmd_da->require_subcommand(1);
    auto* cmd_da_build = cmd_da->add_subcommand("build", "assemble a scenario + manifest");
    std::string da_kind = "single";
    std::string da_source_train, da_source_test, da_target;
    std::string da_source_name = "source", da_target_name = "target";
    double da_hist_fraction = 0.1;
    cmd_da_build->add_option("--kind", da_kind, "single, cross, or reference")->required();
    cmd_da_build->add_option("--source-train", da_source_train, "source training tensor")
        ->required();
    cmd_da_build->add_option("--source-test", da_source_test,
                             "source test tensor (defaults to the training tensor)");
    cmd_da_build->add_option("--target", da_target, "full target-domain tensor")->required();
    cmd_da_build->add_option("--source-name", da_source_name, "source domain label");
    cmd_da_build->add_option("--target-name", da_target_name, "target domain label");
    cmd_da_build->add_option("--hist-fraction", da_hist_fraction,
                             "fraction of the target kept as historical data");

    auto* cmd_da_evaluate =
        cmd_da->add_subcommand("evaluate", "score generated data against a manifest");
    std::string da_manifest, da_generated;
    MeasureFlags da_flags;
    cmd_da_evaluate->add_option("--manifest", da_manifest, "scenario manifest JSON")
        ->required();
    cmd_da_evaluate->add_option("--generated", da_generated, "generated tensor")->required();
    da_flags.attach(cmd_da_evaluate);

    auto* cmd_da_presets =
        cmd_da->add_subcommand("presets", "print the shipped domain configurations");

    // ---- rank ----
    auto* cmd_rank = app.add_subcommand("rank", "Friedman/Conover ranking of a score table");
    std::string rank_input;
    double rank_alpha = 0.05;
    cmd_rank->add_option("scores", rank_input, "CSV: rows methods, columns datasets")
        ->required();
    cmd_rank->add_option("--alpha", rank_alpha, "significance level for tiers");

    // ---- viz ----
    auto* cmd_viz = app.add_subcommand("viz", "plot-data export");
    cmd_viz->require_subcommand(1);
    auto* cmd_viz_tsne = cmd_viz->add_subcommand("tsne", "2-D embedding CSV");
    std::string viz_orig, viz_gen;
    double tsne_perplexity = 30.0;
    int tsne_iters = 1000;
    std::size_t tsne_cap = 2000;
    cmd_viz_tsne->add_option("original", viz_orig, "original tensor")->required();
    cmd_viz_tsne->add_option("generated", viz_gen, "generated tensor")->required();
    cmd_viz_tsne->add_option("--perplexity", tsne_perplexity, "target perplexity");
    cmd_viz_tsne->add_option("--iters", tsne_iters, "gradient descent iterations");
    cmd_viz_tsne->add_option("--cap", tsne_cap, "windows per set ceiling");

    auto* cmd_viz_dist = cmd_viz->add_subcommand("dist", "pooled distribution CSV");
    std::string dist_orig, dist_gen;
    int dist_bins = 50;
    bool dist_kde = false;
    cmd_viz_dist->add_option("original", dist_orig, "original tensor")->required();
    cmd_viz_dist->add_option("generated", dist_gen, "generated tensor")->required();
    cmd_viz_dist->add_option("--bins", dist_bins, "histogram bins / grid points");
    cmd_viz_dist->add_flag("--kde", dist_kde, "Gaussian KDE instead of histogram");

    // ---- datasets ----
    auto* cmd_datasets =
        app.add_subcommand("datasets", "print the dataset registry as CSV");

    // ---- run-external ----
    auto* cmd_external = app.add_subcommand(
        "run-external", "run an external generator command and record wall-clock time");
    std::string ext_command;
    std::string ext_report;
    cmd_external->add_option("--command", ext_command, "shell command to run")->required();
    cmd_external->add_option("--report", ext_report,
                             "existing report JSON to copy with the timing attached");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const nlohmann::json config = load_config_file(config_path);
        if (app.get_option("--seed")->count() == 0 && config.contains("seed")) {
            seed = config.at("seed").get<std::uint64_t>();
        }
        if (app.get_option("--out")->count() == 0 && config.contains("out") &&
            out_dir.empty()) {
            out_dir = config.at("out").get<std::string>();
        }

        const auto load_any_tensor = [](const std::string& path) {
            if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
                return load_tensor_csv(path);
            }
            return load_tensor(path);
        };

        if (cmd_datasets->parsed()) return run_datasets();

        if (cmd_preprocess->parsed()) {
            const auto section = config_section(config, "preprocess");
            merge_option(*cmd_preprocess, "--seq-len", section, "seq_len", pre_seq_len);
            merge_option(*cmd_preprocess, "--stride", section, "stride", pre_stride);
            merge_option(*cmd_preprocess, "--split-ratio", section, "split_ratio", pre_ratio);
            merge_option(*cmd_preprocess, "--acf-max-lag", section, "acf_max_lag",
                         pre_acf_max_lag);

            const fs::path dir = ensure_out_dir(out_dir);
            const RawSeries raw = load_raw_csv(pre_input, pre_header);
            PreprocessConfig pc;
            if (pre_seq_len > 0) pc.seq_len = pre_seq_len;
            pc.stride = pre_stride;
            pc.split_ratio = pre_ratio;
            pc.shuffle_seed = seed;
            pc.normalize = !pre_no_normalize;
            if (pre_acf_max_lag > 0) pc.acf_max_lag = pre_acf_max_lag;
            const PipelineResult result = run_pipeline(raw, pc);

            save_tensor(result.train, dir / "train.tsgt");
            save_tensor(result.test, dir / "test.tsgt");
            result.scaler.save(dir / "scaler.txt");

            Provenance p = make_provenance("preprocess", seed);
            p.input_digests[pre_input] = file_digest_hex(pre_input);
            p.config = {{"seq_len", std::to_string(result.used_seq_len)},
                        {"seq_len_mode", pre_seq_len > 0 ? "explicit" : "auto"},
                        {"stride", std::to_string(pre_stride)},
                        {"split_ratio", std::to_string(pre_ratio)},
                        {"normalize", pre_no_normalize ? "off" : "on"},
                        {"header", pre_header ? "yes" : "no"}};
            write_provenance(p, dir / "provenance.json");
            std::cout << "train windows: " << result.train.r_count()
                      << ", test windows: " << result.test.r_count()
                      << ", l = " << result.used_seq_len << '\n';
            return 0;
        }

        if (cmd_evaluate->parsed()) {
            eval_flags.merge(*cmd_evaluate, config_section(config, "evaluate"));
            const fs::path dir = ensure_out_dir(out_dir);
            const TimeSeriesTensor orig = load_any_tensor(eval_orig);
            const TimeSeriesTensor gen = load_any_tensor(eval_gen);
            MeasureReport report = run_suite(orig, gen, eval_flags.to_config(seed));
            if (!eval_merge.empty()) {
                report = merge_reports(std::move(report), read_measure_report(eval_merge));
            }
            Provenance p = make_provenance("evaluate", seed);
            p.input_digests[eval_orig] = file_digest_hex(eval_orig);
            p.input_digests[eval_gen] = file_digest_hex(eval_gen);
            eval_flags.describe(p.config);
            write_measure_report(report, p, dir / "report.json");
            write_provenance(p, dir / "provenance.json");
            for (const auto& [name, stat] : report.entries) {
                std::cout << name << ": " << stat.mean << " +- " << stat.std << '\n';
            }
            for (const auto& [name, what] : report.diagnostics) {
                std::cerr << "measure " << name << " skipped: " << what << '\n';
            }
            return 0;
        }

        if (cmd_robustness->parsed()) {
            rob_flags.merge(*cmd_robustness, config_section(config, "robustness"));
            const fs::path dir = ensure_out_dir(out_dir);
            const RobustnessTable table =
                run_robustness(rob_seq_len, seed, rob_flags.to_config(seed), rob_r_count,
                               rob_dims, rob_shared);
            Provenance p = make_provenance("robustness", seed);
            p.config = {{"seq_len", std::to_string(rob_seq_len)},
                        {"r_count", std::to_string(rob_r_count)},
                        {"dim_count", std::to_string(rob_dims)},
                        {"shared_params", rob_shared ? "yes" : "no"}};
            rob_flags.describe(p.config);
            write_robustness_csv(table, dir / "robustness.csv");
            write_robustness_json(table, p, dir / "robustness.json");
            write_provenance(p, dir / "provenance.json");
            for (const auto& row : table.rows) {
                std::cout << row.scenario << ':';
                for (const char* name : {"mdd", "acd", "sd", "kd", "ed", "dtw"}) {
                    const auto it = row.measures.find(name);
                    std::cout << ' ' << name << '=';
                    if (it != row.measures.end()) std::cout << it->second.mean;
                }
                std::cout << '\n';
            }
            return 0;
        }

        if (cmd_da_build->parsed()) {
            const fs::path dir = ensure_out_dir(out_dir);
            const DaKind kind = da_kind_from_name(da_kind);
            const TimeSeriesTensor source_train = load_any_tensor(da_source_train);
            const TimeSeriesTensor source_test =
                da_source_test.empty() ? source_train : load_any_tensor(da_source_test);
            const TimeSeriesTensor target_full = load_any_tensor(da_target);
            auto [hist, gt] = split_domain(target_full, da_hist_fraction, seed);
            DomainData data{source_train, source_test, std::move(hist), std::move(gt),
                            da_source_name, da_target_name};
            const DaScenario scenario = [&] {
                switch (kind) {
                    case DaKind::cross: return build_cross(data, seed);
                    case DaKind::reference: return build_reference(data);
                    case DaKind::single: break;
                }
                return build_single(data);
            }();

            save_tensor(scenario.training_set, dir / "training.tsgt");
            save_tensor(data.target_hist, dir / "target_hist.tsgt");
            save_tensor(scenario.eval_gt, dir / "target_gt.tsgt");

            DaManifest manifest;
            manifest.kind = kind;
            manifest.source_name = da_source_name;
            manifest.target_name = da_target_name;
            manifest.training_path = dir / "training.tsgt";
            manifest.eval_gt_path = dir / "target_gt.tsgt";
            manifest.hist_fraction = da_hist_fraction;
            manifest.seed = seed;
            save_manifest(manifest, dir / "manifest.json");

            Provenance p = make_provenance("da build", seed);
            p.input_digests[da_source_train] = file_digest_hex(da_source_train);
            p.input_digests[da_target] = file_digest_hex(da_target);
            if (!da_source_test.empty()) {
                p.input_digests[da_source_test] = file_digest_hex(da_source_test);
            }
            p.config = {{"kind", da_kind},
                        {"hist_fraction", std::to_string(da_hist_fraction)},
                        {"source", da_source_name},
                        {"target", da_target_name}};
            write_provenance(p, dir / "provenance.json");
            std::cout << "training windows: " << scenario.training_set.r_count()
                      << ", ground truth windows: " << scenario.eval_gt.r_count() << '\n';
            return 0;
        }

        if (cmd_da_evaluate->parsed()) {
            da_flags.merge(*cmd_da_evaluate, config_section(config, "da"));
            const fs::path dir = ensure_out_dir(out_dir);
            const DaManifest manifest = load_manifest(da_manifest);
            const DaScenario scenario{manifest.kind, load_tensor(manifest.training_path),
                                      load_tensor(manifest.eval_gt_path),
                                      manifest.source_name, manifest.target_name};
            const TimeSeriesTensor generated = load_any_tensor(da_generated);
            const MeasureReport report =
                evaluate_da(generated, scenario, da_flags.to_config(seed));

            Provenance p = make_provenance("da evaluate", seed);
            p.input_digests[da_manifest] = file_digest_hex(da_manifest);
            p.input_digests[da_generated] = file_digest_hex(da_generated);
            da_flags.describe(p.config);
            p.config["kind"] = da_kind_name(manifest.kind);
            write_measure_report(report, p, dir / "report.json");
            write_provenance(p, dir / "provenance.json");
            for (const auto& [name, stat] : report.entries) {
                std::cout << name << ": " << stat.mean << " +- " << stat.std << '\n';
            }
            return 0;
        }

        if (cmd_da_presets->parsed()) {
            std::cout << "dataset,domain_attribute,source,targets,note\n";
            for (const auto& preset : da_presets()) {
                std::cout << preset.dataset << ',' << preset.domain_attribute << ','
                          << preset.source << ",\"";
                for (std::size_t i = 0; i < preset.targets.size(); ++i) {
                    if (i > 0) std::cout << "; ";
                    std::cout << preset.targets[i];
                }
                std::cout << "\"," << preset.note << '\n';
            }
            return 0;
        }

        if (cmd_rank->parsed()) {
            merge_option(*cmd_rank, "--alpha", config_section(config, "rank"), "alpha",
                         rank_alpha);
            const fs::path dir = ensure_out_dir(out_dir);
            const ScoreTable table = ScoreTable::from_csv(rank_input);
            const RankAnalysis analysis = analyze_ranks(table, rank_alpha);
            Provenance p = make_provenance("rank", seed);
            p.input_digests[rank_input] = file_digest_hex(rank_input);
            p.config = {{"alpha", std::to_string(rank_alpha)}};
            write_rank_analysis_json(analysis, table, p, dir / "rank_analysis.json");
            write_rank_tiers_csv(analysis, table, dir / "rank_tiers.csv");
            write_provenance(p, dir / "provenance.json");
            std::cout << "friedman chi-square: " << analysis.friedman_stat
                      << ", p = " << analysis.p_value << ", tiers: " << analysis.tiers.size()
                      << '\n';
            return 0;
        }

        if (cmd_viz_tsne->parsed()) {
            const auto section = config_section(config, "viz_tsne");
            merge_option(*cmd_viz_tsne, "--perplexity", section, "perplexity",
                         tsne_perplexity);
            merge_option(*cmd_viz_tsne, "--iters", section, "iters", tsne_iters);
            merge_option(*cmd_viz_tsne, "--cap", section, "cap", tsne_cap);
            const fs::path dir = ensure_out_dir(out_dir);
            const TimeSeriesTensor orig = load_any_tensor(viz_orig);
            const TimeSeriesTensor gen = load_any_tensor(viz_gen);
            TsneConfig tc;
            tc.perplexity = tsne_perplexity;
            tc.iterations = tsne_iters;
            tc.cap = tsne_cap;
            tc.seed = seed;
            const Embedding2D embedding = tsne_embed(orig, gen, tc);
            write_embedding_csv(embedding, dir / "tsne.csv");
            {
                std::ofstream kl(dir / "tsne_kl.csv", std::ios::trunc);
                kl << "checkpoint,kl\n";
                for (std::size_t i = 0; i < embedding.kl_trace.size(); ++i) {
                    kl << i << ',' << embedding.kl_trace[i] << '\n';
                }
            }
            Provenance p = make_provenance("viz tsne", seed);
            p.input_digests[viz_orig] = file_digest_hex(viz_orig);
            p.input_digests[viz_gen] = file_digest_hex(viz_gen);
            p.config = {{"perplexity", std::to_string(tsne_perplexity)},
                        {"iters", std::to_string(tsne_iters)},
                        {"cap", std::to_string(tsne_cap)},
                        {"exaggeration", "12x for 250 iterations"},
                        {"learning_rate", "200"},
                        {"momentum", "0.5 then 0.8 from iteration 250"}};
            write_provenance(p, dir / "provenance.json");
            std::cout << "embedded points: " << embedding.points.size()
                      << ", final KL: " << embedding.kl_trace.back() << '\n';
            return 0;
        }

        if (cmd_viz_dist->parsed()) {
            const auto section = config_section(config, "viz_dist");
            merge_option(*cmd_viz_dist, "--bins", section, "bins", dist_bins);
            const fs::path dir = ensure_out_dir(out_dir);
            const TimeSeriesTensor orig = load_any_tensor(dist_orig);
            const TimeSeriesTensor gen = load_any_tensor(dist_gen);
            const DistributionData data = distribution_data(orig, gen, dist_bins, dist_kde);
            write_distribution_csv(data, dir / "distribution.csv");
            Provenance p = make_provenance("viz dist", seed);
            p.input_digests[dist_orig] = file_digest_hex(dist_orig);
            p.input_digests[dist_gen] = file_digest_hex(dist_gen);
            p.config = {{"bins", std::to_string(dist_bins)},
                        {"mode", dist_kde ? "kde" : "histogram"}};
            write_provenance(p, dir / "provenance.json");
            return 0;
        }

        if (cmd_external->parsed()) {
            const fs::path dir = ensure_out_dir(out_dir);
            const auto [status, seconds] =
                timed([&] { return std::system(ext_command.c_str()); });
            const int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            nlohmann::json doc;
            doc["command"] = ext_command;
            doc["exit_code"] = exit_code;
            doc["wall_clock_seconds"] = seconds;
            std::ofstream out(dir / "external_run.json", std::ios::trunc);
            out << doc.dump(2) << '\n';
            if (!ext_report.empty()) {
                MeasureReport report = read_measure_report(ext_report);
                report.wall_clock_seconds = seconds;
                Provenance p = make_provenance("run-external", seed);
                p.config = {{"command", ext_command}};
                write_measure_report(report, p, dir / "report_with_timing.json");
            }
            std::cout << "wall clock: " << seconds << " s, exit code: " << exit_code << '\n';
            return exit_code == 0 ? 0 : 2;
        }
    } catch (const ToolkitError& e) {
        std::cerr << "tsgkit: error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "tsgkit: error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}

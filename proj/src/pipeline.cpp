#include "linkexpr/pipeline.hpp"

#include "linkexpr/automorphism.hpp"
#include "linkexpr/digest.hpp"
#include "linkexpr/wl.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace linkexpr {

using Json = nlohmann::ordered_json;

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("input not found: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// ---- config ---------------------------------------------------------------

void PipelineConfig::validate() const {
    gen.validate();
    ratios.validate();
    if (models.empty()) throw ValidationError("config: model list is empty");
    for (const auto& m : models) m.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("config: alpha must lie in (0, 1)");
    if (ridge.epsilon && !(*ridge.epsilon > 0.0)) throw ValidationError("config: ridge epsilon must be positive");
}

namespace {

const std::set<std::string> kConfigKeys{
    "seed", "count", "nmin", "nmax", "max_attempts", "pair_cap", "split_ratios", "models", "m", "l", "beta", "h",
    "drnl_distance_pairs", "alpha", "split", "embeddings", "ridge", "q"};

template <typename T>
T config_value(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(std::string("config: key '") + key + "' has the wrong type");
    }
}

}  // namespace

PipelineConfig parse_pipeline_config(std::string_view json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!kConfigKeys.contains(key)) throw ValidationError("config: unknown key '" + key + "'");
    }
    for (const char* key : {"seed", "count", "models"}) {
        if (!j.contains(key)) throw ValidationError(std::string("config: missing required key '") + key + "'");
    }

    PipelineConfig c;
    c.gen.seed = config_value<std::uint64_t>(j, "seed");
    c.gen.target_graph_count = config_value<std::uint32_t>(j, "count");
    if (j.contains("nmin")) c.gen.n_min = config_value<std::uint32_t>(j, "nmin");
    if (j.contains("nmax")) c.gen.n_max = config_value<std::uint32_t>(j, "nmax");
    if (j.contains("max_attempts")) c.gen.max_attempts_per_graph = config_value<std::uint32_t>(j, "max_attempts");
    if (j.contains("pair_cap")) c.gen.pair_cap = config_value<std::uint32_t>(j, "pair_cap");
    if (j.contains("split_ratios")) {
        auto r = config_value<std::vector<double>>(j, "split_ratios");
        if (r.size() != 3) throw ValidationError("config: split_ratios must have three entries");
        c.ratios = {r[0], r[1], r[2]};
    }

    ModelConfig base;
    if (j.contains("m")) base.m = config_value<std::uint32_t>(j, "m");
    if (j.contains("l")) base.l = config_value<std::uint32_t>(j, "l");
    if (j.contains("beta")) base.beta = config_value<double>(j, "beta");
    if (j.contains("h")) base.h_hops = config_value<std::uint32_t>(j, "h");
    if (j.contains("drnl_distance_pairs")) base.drnl_distance_pairs = config_value<bool>(j, "drnl_distance_pairs");
    for (const auto& name : config_value<std::vector<std::string>>(j, "models")) {
        ModelConfig mc = base;
        mc.kind = parse_model(name);
        c.models.push_back(mc);
    }

    if (j.contains("alpha")) c.alpha = config_value<double>(j, "alpha");
    if (j.contains("split")) c.split = parse_split(config_value<std::string>(j, "split"));
    if (j.contains("embeddings")) c.embeddings = config_value<std::string>(j, "embeddings");
    if (j.contains("ridge")) {
        const auto& r = j.at("ridge");
        if (r.is_boolean()) {
            c.ridge.enabled = r.get<bool>();
        } else if (r.is_number()) {
            c.ridge.enabled = true;
            c.ridge.epsilon = r.get<double>();
        } else {
            throw ValidationError("config: key 'ridge' must be a boolean or a number");
        }
    }
    if (j.contains("q")) c.q = config_value<std::uint32_t>(j, "q");
    c.validate();
    return c;
}

PipelineConfig read_pipeline_config(const std::string& path) { return parse_pipeline_config(read_text_file(path)); }

// ---- artifacts ------------------------------------------------------------

std::string evaluation_to_json(const ExactEvaluation& eval, SplitSelector split) {
    Json root;
    root["version"] = 1;
    root["model"] = {
        {"kind", model_name(eval.config.kind)},
        {"m", eval.config.m},
        {"l", eval.config.l},
        {"beta", eval.config.beta},
        {"h", eval.config.h_hops},
        {"drnl_distance_pairs", eval.config.drnl_distance_pairs},
    };
    root["split"] = split_selector_name(split);
    root["precision"] = eval.precision;
    root["truncated_mining"] = eval.any_truncated;
    Json rows = Json::array();
    for (const auto& v : eval.verdicts) {
        rows.push_back({
            {"id", v.instance_id},
            {"graph_id", v.graph_id},
            {"digest_a", v.digest_a.hex()},
            {"digest_b", v.digest_b.hex()},
            {"distinguished", v.distinguished},
        });
    }
    root["instances"] = std::move(rows);
    return root.dump(1) + "\n";
}

std::string exact_verdicts_csv(const std::vector<ExactEvaluation>& evals) {
    std::ostringstream out;
    out << "model,instance_id,graph_id,digest_a,digest_b,distinguished\n";
    for (const auto& e : evals) {
        for (const auto& v : e.verdicts) {
            out << model_name(e.config.kind) << ',' << v.instance_id << ',' << v.graph_id << ',' << v.digest_a.hex() << ','
                << v.digest_b.hex() << ',' << (v.distinguished ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

std::string symmetry_profile_csv(const Dataset& ds, const SearchLimits& limits) {
    std::ostringstream out;
    out << "graph_id,n,edges,wl_classes,orbit_count,r_hat,r_exact,exact_feasible\n";
    for (const auto& dg : ds.graphs) {
        const auto& g = dg.graph;
        const std::size_t classes = wl_refine(g).class_count;
        const bool feasible = g.node_count() <= limits.max_nodes;
        char r_hat[40];
        std::snprintf(r_hat, sizeof r_hat, "%.17g", symmetry_measure(g.node_count(), classes));
        out << dg.id << ',' << g.node_count() << ',' << g.edge_count() << ',' << classes << ',';
        if (feasible) {
            const std::size_t k = orbits(g, limits).orbit_count;
            char r_exact[40];
            std::snprintf(r_exact, sizeof r_exact, "%.17g", symmetry_measure(g.node_count(), k));
            out << k << ',' << r_hat << ',' << r_exact << ",1\n";
        } else {
            out << ",," << r_hat << ",,0\n";
        }
    }
    return out.str();
}

std::string rpc_permutations_jsonl(const Dataset& ds, std::uint64_t seed, std::uint32_t q) {
    std::string out;
    for (const auto& inst : ds.instances) {
        const auto n = ds.graphs.at(inst.graph_id).graph.node_count();
        const auto perms = draw_rpc_permutations(seed, inst.instance_id, n, q);
        Json copies = Json::array();
        for (const auto& p : perms.copies) copies.push_back(p.mapping());
        Json line = {
            {"instance_id", inst.instance_id},
            {"graph_id", inst.graph_id},
            {"copies", std::move(copies)},
            {"extra", perms.extra.mapping()},
        };
        out += line.dump() + "\n";
    }
    return out;
}

PrecisionRow rpc_row(const RpcSummary& summary) {
    PrecisionRow row;
    row.model = "rpc";
    row.instances = summary.verdicts.size();
    row.precision = summary.precision;
    row.degenerate = summary.degenerate;
    return row;
}

// ---- manifest -------------------------------------------------------------

std::string manifest_to_json(const RunManifest& m) {
    const auto files = [](const std::vector<OutputFile>& list, const char* key) {
        Json arr = Json::array();
        for (const auto& f : list) arr.push_back({{key, f.name}, {"sha256", f.sha256}});
        return arr;
    };
    Json j;
    j["status"] = m.failed ? "FAILED" : "ok";
    j["tool_version"] = m.tool_version;
    j["command_line"] = m.command_line;
    j["seed"] = m.seed;
    j["timestamp"] = m.timestamp;
    j["inputs"] = files(m.inputs, "path");
    j["outputs"] = files(m.outputs, "name");
    if (m.failed) {
        j["failed_stage"] = m.failed_stage;
        j["error"] = m.error;
    }
    return j.dump(1) + "\n";
}

StageError::StageError(std::string stage, const Error& cause)
    : Error(cause.kind(), stage + ": " + cause.what()), stage_(std::move(stage)) {}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& config, const std::string& out_dir, const std::string& command_line) {
    config.validate();
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

    RunManifest manifest;
    manifest.command_line = command_line;
    manifest.seed = config.gen.seed;
    manifest.timestamp = utc_timestamp();

    const auto emit = [&](const std::string& name, const std::string& content) {
        write_text_file((fs::path(out_dir) / name).string(), content);
        manifest.outputs.push_back({name, sha256_hex(content)});
    };
    const auto stage = [&](const char* name, const std::function<void()>& body) {
        try {
            body();
        } catch (const Error& e) {
            StageError err(name, e);
            manifest.failed = true;
            manifest.failed_stage = name;
            manifest.error = err.what();
            write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest_to_json(manifest));
            throw err;
        }
    };

    Dataset ds;
    stage("gen", [&] {
        ds = build_dataset(config.gen, config.ratios);
        emit("dataset.json", dataset_to_json(ds));
        if (config.q > 0) emit("permutations.jsonl", rpc_permutations_jsonl(ds, config.gen.seed, config.q));
    });
    stage("mine", [&] {
        const auto bad = reverify_instances(ds);
        if (!bad.empty()) throw ValidationError("instance " + std::to_string(bad.front()) + " failed re-verification");
    });

    PrecisionReport report;
    std::vector<ExactEvaluation> evals;
    stage("represent", [&] {
        for (const auto& mc : config.models) {
            evals.push_back(evaluate_exact(ds, mc, config.split));
            emit(std::string("reps_") + model_name(mc.kind) + ".json", evaluation_to_json(evals.back(), config.split));
        }
    });
    stage("eval-exact", [&] {
        for (const auto& e : evals) report.rows.push_back(precision_row(e));
    });
    if (config.embeddings) {
        stage("eval-rpc", [&] {
            manifest.inputs.push_back({*config.embeddings, sha256_hex(read_text_file(*config.embeddings))});
            const auto batches = read_embeddings(*config.embeddings);
            const auto summary = rpc_precision(batches, RpcOptions{config.alpha, config.ridge});
            emit("rpc_verdicts.csv", rpc_verdicts_csv(summary.verdicts));
            report.rows.push_back(rpc_row(summary));
        });
    }
    stage("report", [&] {
        emit("report.csv", report_to_csv(report));
        emit("report.txt", render_table(report));
    });
    write_text_file((fs::path(out_dir) / "manifest.json").string(), manifest_to_json(manifest));
    return manifest;
}

}  // namespace linkexpr

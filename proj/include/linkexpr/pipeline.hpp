#pragma once

#include "linkexpr/benchgen.hpp"
#include "linkexpr/evaluation.hpp"
#include "linkexpr/report.hpp"
#include "linkexpr/rpc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace linkexpr {

inline constexpr const char* kToolVersion = "0.1.0";

/// Flat run configuration. Keys (all but seed/count/models optional):
///   seed, count, nmin, nmax, max_attempts, pair_cap, split_ratios [3],
///   models [names], m, l, beta, h, drnl_distance_pairs, alpha,
///   split ("train" | "validation" | "test" | "all"), embeddings (path),
///   ridge (false | true | epsilon), q (permutations per instance; 0 = none).
struct PipelineConfig {
    GenParams gen;
    SplitRatios ratios;
    std::vector<ModelConfig> models;
    double alpha = 0.05;
    SplitSelector split = SplitSelector::all;
    std::optional<std::string> embeddings;
    RidgeOption ridge;
    std::uint32_t q = 0;

    void validate() const;
};

/// Parses and checks a config document; unknown keys and wrong types are ValidationErrors.
PipelineConfig parse_pipeline_config(std::string_view json_text);
PipelineConfig read_pipeline_config(const std::string& path);

struct OutputFile {
    std::string name;  // relative to the output directory
    std::string sha256;
};

struct RunManifest {
    std::string command_line;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::vector<OutputFile> inputs;  // name holds the path as given
    std::string timestamp;           // UTC, ISO 8601
    std::vector<OutputFile> outputs;
    bool failed = false;
    std::string failed_stage;
    std::string error;
};

std::string manifest_to_json(const RunManifest& m);

/// An error raised inside one pipeline stage. Keeps the kind of the original error.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& cause);
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// gen -> mine -> represent -> eval-exact (-> eval-rpc) with all artifacts in
/// out_dir. On failure the manifest is still written, marked FAILED, and the
/// StageError is rethrown.
RunManifest run_pipeline(const PipelineConfig& config, const std::string& out_dir, const std::string& command_line = {});

/// Per-instance digests and verdicts of one exact evaluation.
std::string evaluation_to_json(const ExactEvaluation& eval, SplitSelector split);

/// model,instance_id,graph_id,digest_a,digest_b,distinguished
std::string exact_verdicts_csv(const std::vector<ExactEvaluation>& evals);

/// graph_id,n,edges,wl_classes,orbit_count,r_hat,r_exact,exact_feasible
std::string symmetry_profile_csv(const Dataset& ds, const SearchLimits& limits = {});

/// One JSON line per instance with its q relabelings and the extra permutation.
std::string rpc_permutations_jsonl(const Dataset& ds, std::uint64_t seed, std::uint32_t q);

/// Precision row for an RPC run (model "rpc").
PrecisionRow rpc_row(const RpcSummary& summary);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

}  // namespace linkexpr

#pragma once

#include "linkexpr/graph.hpp"
#include "linkexpr/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linkexpr {

/// Ridge regularization for singular covariances. When enabled without an
/// explicit epsilon, 1e-8 * trace(S) / d is added to the diagonal.
struct RidgeOption {
    bool enabled = false;
    std::optional<double> epsilon;
};

/// Relative eigenvalue floor below which a covariance counts as singular.
inline constexpr double kSingularTolerance = 1e-10;

/// Hotelling statistic q * mean^T S^{-1} mean for the rows of `diffs` (q x d),
/// with S the (q-1)-normalized sample covariance. Solved through an LDLT
/// factorization. Throws DegreesOfFreedomError when q <= d and
/// SingularCovariance when the smallest eigenvalue of S is below
/// kSingularTolerance times the largest (and no ridge is applied).
double hotelling_t2(const Eigen::MatrixXd& diffs, const RidgeOption& ridge = {});

/// ((q-1) d / (q-d)) * F_{d,q-d} upper alpha quantile.
double rpc_threshold(std::size_t q, std::size_t d, double alpha);

/// Embeddings of one link pair across q permuted copies of its graph.
struct EmbeddingBatch {
    std::string instance_id;
    Eigen::MatrixXd rows_a;   // q x d, link a in copy i
    Eigen::MatrixXd rows_b;   // q x d, link b in copy i
    Eigen::MatrixXd rows_pi;  // q x d, link a in copy i under one extra permutation

    std::size_t q() const { return static_cast<std::size_t>(rows_a.rows()); }
    std::size_t d() const { return static_cast<std::size_t>(rows_a.cols()); }
    /// Shapes agree, q > d, every entry finite.
    void validate() const;
};

enum class RpcStatus {
    ok,
    degenerate_identical,   // rows_a == rows_b exactly
    degenerate_singular,    // main-procedure covariance singular
    unreliable_singular,    // reliability covariance singular
};

const char* rpc_status_text(RpcStatus s);

struct RpcOptions {
    double alpha = 0.05;
    RidgeOption ridge;
};

struct RpcVerdict {
    std::string instance_id;
    double t2_test = 0.0;         // NaN when the main procedure is degenerate
    double t2_reliability = 0.0;  // NaN when the reliability check is singular
    double threshold = 0.0;
    bool reliable = false;
    bool distinguishable = false;
    double alpha = 0.05;
    RpcStatus status = RpcStatus::ok;
};

/// Major procedure on rows_a - rows_b, reliability check on rows_a - rows_pi,
/// both against the same threshold. Distinguishable requires
/// T2_reliability < threshold < T2_test. Singular covariances become statuses
/// rather than exceptions.
RpcVerdict rpc_verdict(const EmbeddingBatch& batch, const RpcOptions& options = {});

struct RpcSummary {
    double precision = 0.0;
    std::size_t degenerate = 0;  // instances whose status is not ok
    std::vector<RpcVerdict> verdicts;
};

RpcSummary rpc_precision(std::span<const EmbeddingBatch> batches, const RpcOptions& options = {});

/// max(0, cos(e1, e2)). Throws ValidationError for zero vectors or size mismatch.
double contrastive_loss(std::span<const double> e1, std::span<const double> e2);

/// Reads the JSON-lines interchange format, one record per line:
/// {"instance_id": .., "q": .., "d": .., "rows_a": [[..]], "rows_b": [[..]], "rows_pi": [[..]]}
std::vector<EmbeddingBatch> parse_embeddings(std::string_view text);
std::vector<EmbeddingBatch> read_embeddings(const std::string& path);
std::string embedding_batch_to_json(const EmbeddingBatch& batch);

std::string rpc_verdicts_csv(std::span<const RpcVerdict> verdicts);

/// The q relabelings of one instance's graph plus the extra permutation used by
/// the reliability check, drawn from derive_seed(seed, "rpc-permutations", instance_id).
struct RpcPermutations {
    std::vector<Permutation> copies;
    Permutation extra = Permutation::identity(0);
};

RpcPermutations draw_rpc_permutations(std::uint64_t seed, std::uint32_t instance_id, std::size_t n, std::size_t q);

/// Uniform random permutation by Fisher-Yates.
Permutation random_permutation(SplitMix64& rng, std::size_t n);

}  // namespace linkexpr

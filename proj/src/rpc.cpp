#include "linkexpr/rpc.hpp"

#include "linkexpr/error.hpp"
#include "linkexpr/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace linkexpr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void EmbeddingBatch::validate() const {
    const std::string where = "embedding batch '" + instance_id + "'";
    if (rows_b.rows() != rows_a.rows() || rows_b.cols() != rows_a.cols() || rows_pi.rows() != rows_a.rows() ||
        rows_pi.cols() != rows_a.cols()) {
        throw ValidationError(where + ": rows_a, rows_b and rows_pi must share one q x d shape");
    }
    if (d() < 1) throw ValidationError(where + ": d must be positive");
    if (q() <= d()) throw DegreesOfFreedomError(where + ": q must exceed d");
    if (!rows_a.allFinite() || !rows_b.allFinite() || !rows_pi.allFinite()) {
        throw ValidationError(where + ": non-finite embedding entry");
    }
}

const char* rpc_status_text(RpcStatus s) {
    switch (s) {
        case RpcStatus::ok: return "ok";
        case RpcStatus::degenerate_identical: return "degenerate: identical embeddings";
        case RpcStatus::degenerate_singular: return "degenerate: singular covariance";
        case RpcStatus::unreliable_singular: return "unreliable: singular reliability covariance";
    }
    return "?";
}

RpcVerdict rpc_verdict(const EmbeddingBatch& batch, const RpcOptions& options) {
    batch.validate();
    RpcVerdict v;
    v.instance_id = batch.instance_id;
    v.alpha = options.alpha;
    v.threshold = rpc_threshold(batch.q(), batch.d(), options.alpha);

    const Eigen::MatrixXd test_diffs = batch.rows_a - batch.rows_b;
    bool test_ok = true;
    try {
        v.t2_test = hotelling_t2(test_diffs, options.ridge);
    } catch (const SingularCovariance&) {
        v.t2_test = kNaN;
        v.status = test_diffs.isZero(0.0) ? RpcStatus::degenerate_identical : RpcStatus::degenerate_singular;
        test_ok = false;
    }

    try {
        v.t2_reliability = hotelling_t2(batch.rows_a - batch.rows_pi, options.ridge);
        v.reliable = v.t2_reliability < v.threshold;
    } catch (const SingularCovariance&) {
        v.t2_reliability = kNaN;
        v.reliable = false;
        if (test_ok) v.status = RpcStatus::unreliable_singular;
    }
    v.distinguishable = test_ok && v.reliable && v.t2_test > v.threshold;
    return v;
}

RpcSummary rpc_precision(std::span<const EmbeddingBatch> batches, const RpcOptions& options) {
    if (batches.empty()) throw ValidationError("rpc_precision: no embedding batches");
    RpcSummary out;
    out.verdicts.resize(batches.size());
    parallel_for(batches.size(), [&](std::size_t i) { out.verdicts[i] = rpc_verdict(batches[i], options); });
    std::size_t hits = 0;
    for (const auto& v : out.verdicts) {
        hits += v.distinguishable ? 1 : 0;
        out.degenerate += v.status != RpcStatus::ok ? 1 : 0;
    }
    out.precision = static_cast<double>(hits) / static_cast<double>(batches.size());
    return out;
}

double contrastive_loss(std::span<const double> e1, std::span<const double> e2) {
    if (e1.size() != e2.size()) throw ValidationError("contrastive_loss: vector sizes differ");
    double dot = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < e1.size(); ++i) {
        dot += e1[i] * e2[i];
        n1 += e1[i] * e1[i];
        n2 += e2[i] * e2[i];
    }
    if (!(n1 > 0.0) || !(n2 > 0.0)) throw ValidationError("contrastive_loss: zero-norm vector");
    const double cosine = dot / (std::sqrt(n1) * std::sqrt(n2));
    return std::clamp(cosine, 0.0, 1.0);
}

namespace {

Eigen::MatrixXd matrix_from(const nlohmann::json& rows, std::size_t q, std::size_t d, const char* name) {
    if (!rows.is_array() || rows.size() != q) {
        throw ValidationError(std::string(name) + " must be an array of q rows");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < q; ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != d) throw ValidationError(std::string(name) + " rows must have d entries");
        for (std::size_t j = 0; j < d; ++j) {
            if (!row[j].is_number()) throw ValidationError(std::string(name) + " entries must be numbers");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
        }
    }
    return m;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<EmbeddingBatch> parse_embeddings(std::string_view text) {
    std::vector<EmbeddingBatch> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            EmbeddingBatch b;
            const auto& id = j.at("instance_id");
            b.instance_id = id.is_string() ? id.get<std::string>() : id.dump();
            const auto q = j.at("q").get<std::size_t>();
            const auto d = j.at("d").get<std::size_t>();
            b.rows_a = matrix_from(j.at("rows_a"), q, d, "rows_a");
            b.rows_b = matrix_from(j.at("rows_b"), q, d, "rows_b");
            b.rows_pi = matrix_from(j.at("rows_pi"), q, d, "rows_pi");
            b.validate();
            out.push_back(std::move(b));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(line_no, std::string("embedding record: ") + e.what());
        } catch (const ValidationError& e) {
            throw ParseError(line_no, e.what());
        } catch (const DegreesOfFreedomError& e) {
            throw DegreesOfFreedomError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<EmbeddingBatch> read_embeddings(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("input not found: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_embeddings(buffer.str());
}

std::string embedding_batch_to_json(const EmbeddingBatch& batch) {
    nlohmann::ordered_json j;
    j["instance_id"] = batch.instance_id;
    j["q"] = batch.q();
    j["d"] = batch.d();
    j["rows_a"] = matrix_json(batch.rows_a);
    j["rows_b"] = matrix_json(batch.rows_b);
    j["rows_pi"] = matrix_json(batch.rows_pi);
    return j.dump();
}

std::string rpc_verdicts_csv(std::span<const RpcVerdict> verdicts) {
    std::ostringstream out;
    out << "instance_id,t2_test,t2_reliability,threshold,reliable,distinguishable,alpha,status\n";
    for (const auto& v : verdicts) {
        out << v.instance_id << ',' << format_double(v.t2_test) << ',' << format_double(v.t2_reliability) << ','
            << format_double(v.threshold) << ',' << (v.reliable ? 1 : 0) << ',' << (v.distinguishable ? 1 : 0) << ','
            << format_double(v.alpha) << ',' << rpc_status_text(v.status) << '\n';
    }
    return out.str();
}

Permutation random_permutation(SplitMix64& rng, std::size_t n) {
    std::vector<NodeId> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<NodeId>(i);
    for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[rng.uniform_int(0, i - 1)]);
    return Permutation(std::move(m));
}

RpcPermutations draw_rpc_permutations(std::uint64_t seed, std::uint32_t instance_id, std::size_t n, std::size_t q) {
    SplitMix64 rng(derive_seed(seed, "rpc-permutations", instance_id));
    RpcPermutations out;
    for (std::size_t i = 0; i < q; ++i) out.copies.push_back(random_permutation(rng, n));
    out.extra = random_permutation(rng, n);
    return out;
}

}  // namespace linkexpr

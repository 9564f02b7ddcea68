#pragma once

#include "linkexpr/benchgen.hpp"
#include "linkexpr/linkrep.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace linkexpr {

/// Which graphs of a dataset an evaluation covers.
enum class SplitSelector { train, validation, test, all };
SplitSelector parse_split(std::string_view name);
const char* split_selector_name(SplitSelector s);

struct InstanceVerdict {
    std::uint32_t instance_id = 0;
    std::uint32_t graph_id = 0;
    Digest128 digest_a;
    Digest128 digest_b;
    bool distinguished = false;
};

struct ExactEvaluation {
    ModelConfig config;
    std::vector<InstanceVerdict> verdicts;  // dataset instance order
    double precision = 0.0;
    bool any_truncated = false;  // some evaluated graph had its pair list truncated
};

/// Represents both links of every instance in the split and reports the
/// fraction with unequal representations. Throws ValidationError on an empty split.
ExactEvaluation evaluate_exact(const Dataset& ds, const ModelConfig& cfg, SplitSelector split);

double exact_precision(const Dataset& ds, const ModelConfig& cfg, SplitSelector split);

}  // namespace linkexpr

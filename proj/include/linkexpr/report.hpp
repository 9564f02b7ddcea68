#pragma once

#include "linkexpr/evaluation.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace linkexpr {

struct PrecisionRow {
    std::string model;
    std::uint32_t m = 0;
    std::uint32_t l = 0;
    std::size_t instances = 0;
    double precision = 0.0;
    bool truncated_mining = false;
    std::size_t degenerate = 0;

    friend bool operator==(const PrecisionRow&, const PrecisionRow&) = default;
};

struct PrecisionReport {
    std::vector<PrecisionRow> rows;  // in configured model order
    friend bool operator==(const PrecisionReport&, const PrecisionReport&) = default;
};

PrecisionRow precision_row(const ExactEvaluation& eval);

/// Evaluates every config in order on one split.
PrecisionReport build_precision_report(const Dataset& ds, const std::vector<ModelConfig>& models, SplitSelector split);

/// Fixed-width table: a header line, then one line per row. Precision is shown
/// with three decimals (ties round to even).
std::string render_table(const PrecisionReport& report);

/// CSV with full-precision values; report_from_csv(report_to_csv(r)) == r.
std::string report_to_csv(const PrecisionReport& report);
PrecisionReport report_from_csv(std::string_view text);

/// "%.3f" formatting; exact binary ties round to even.
std::string format_precision(double value);

}  // namespace linkexpr

#include "linkexpr/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace linkexpr {

std::string format_precision(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

PrecisionRow precision_row(const ExactEvaluation& eval) {
    PrecisionRow row;
    row.model = model_name(eval.config.kind);
    row.m = eval.config.kind == ModelKind::seal ? eval.config.h_hops : eval.config.m;
    row.l = eval.config.l;
    row.instances = eval.verdicts.size();
    row.precision = eval.precision;
    row.truncated_mining = eval.any_truncated;
    return row;
}

PrecisionReport build_precision_report(const Dataset& ds, const std::vector<ModelConfig>& models, SplitSelector split) {
    PrecisionReport report;
    for (const auto& cfg : models) report.rows.push_back(precision_row(evaluate_exact(ds, cfg, split)));
    return report;
}

namespace {

std::string flags_of(const PrecisionRow& row) {
    std::string flags;
    if (row.truncated_mining) flags = "truncated";
    if (row.degenerate > 0) {
        if (!flags.empty()) flags += ';';
        flags += "degenerate=" + std::to_string(row.degenerate);
    }
    return flags.empty() ? "-" : flags;
}

}  // namespace

std::string render_table(const PrecisionReport& report) {
    const std::vector<std::string> header{"model", "m", "l", "instances", "precision", "flags"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : report.rows) {
        cells.push_back({row.model, std::to_string(row.m), std::to_string(row.l), std::to_string(row.instances),
                         format_precision(row.precision), flags_of(row)});
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : cells) width[c] = std::max(width[c], r[c].size());
    }
    // Text columns are left-aligned, numeric columns right-aligned.
    const auto line = [&](const std::vector<std::string>& r) {
        std::string out;
        for (std::size_t c = 0; c < r.size(); ++c) {
            const bool left = c == 0 || c == r.size() - 1;
            const std::string pad(width[c] - r[c].size(), ' ');
            if (c > 0) out += "  ";
            out += left ? r[c] + (c == r.size() - 1 ? "" : pad) : pad + r[c];
        }
        return out + "\n";
    };
    std::string table = line(header);
    for (const auto& r : cells) table += line(r);
    return table;
}

std::string report_to_csv(const PrecisionReport& report) {
    std::ostringstream out;
    out << "model,m,l,instances,precision,truncated_mining,degenerate_instances\n";
    for (const auto& row : report.rows) {
        char prec[40];
        std::snprintf(prec, sizeof prec, "%.17g", row.precision);
        out << row.model << ',' << row.m << ',' << row.l << ',' << row.instances << ',' << prec << ','
            << (row.truncated_mining ? 1 : 0) << ',' << row.degenerate << '\n';
    }
    return out.str();
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(line, "bad report field '" + std::string(s) + "'");
    }
    return value;
}

}  // namespace

PrecisionReport report_from_csv(std::string_view text) {
    PrecisionReport report;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool seen_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!seen_header) {
            if (line != "model,m,l,instances,precision,truncated_mining,degenerate_instances") {
                throw ParseError(line_no, "unexpected report header");
            }
            seen_header = true;
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (f.size() != 7) throw ParseError(line_no, "expected 7 report fields");
        PrecisionRow row;
        row.model = std::string(f[0]);
        row.m = parse_number<std::uint32_t>(f[1], line_no);
        row.l = parse_number<std::uint32_t>(f[2], line_no);
        row.instances = parse_number<std::size_t>(f[3], line_no);
        row.precision = parse_number<double>(f[4], line_no);
        row.truncated_mining = parse_number<int>(f[5], line_no) != 0;
        row.degenerate = parse_number<std::size_t>(f[6], line_no);
        report.rows.push_back(std::move(row));
    }
    if (!seen_header) throw ParseError(line_no, "empty report");
    return report;
}

}  // namespace linkexpr

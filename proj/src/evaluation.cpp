#include "linkexpr/evaluation.hpp"

#include "linkexpr/parallel.hpp"

#include <algorithm>

namespace linkexpr {

SplitSelector parse_split(std::string_view name) {
    if (name == "train") return SplitSelector::train;
    if (name == "validation" || name == "val") return SplitSelector::validation;
    if (name == "test") return SplitSelector::test;
    if (name == "all") return SplitSelector::all;
    throw ValidationError("unknown split '" + std::string(name) + "'");
}

const char* split_selector_name(SplitSelector s) {
    switch (s) {
        case SplitSelector::train: return "train";
        case SplitSelector::validation: return "validation";
        case SplitSelector::test: return "test";
        case SplitSelector::all: return "all";
    }
    return "?";
}

namespace {

bool selected(const DatasetGraph& g, SplitSelector s) {
    switch (s) {
        case SplitSelector::all: return true;
        case SplitSelector::train: return g.split == Split::train;
        case SplitSelector::validation: return g.split == Split::validation;
        case SplitSelector::test: return g.split == Split::test;
    }
    return false;
}

}  // namespace

ExactEvaluation evaluate_exact(const Dataset& ds, const ModelConfig& cfg, SplitSelector split) {
    cfg.validate();
    std::vector<std::vector<std::uint32_t>> by_graph(ds.graphs.size());
    std::vector<std::uint32_t> graph_order;
    for (const auto& inst : ds.instances) {
        const auto& g = ds.graphs.at(inst.graph_id);
        if (!selected(g, split)) continue;
        if (by_graph[inst.graph_id].empty()) graph_order.push_back(inst.graph_id);
        by_graph[inst.graph_id].push_back(inst.instance_id);
    }
    if (graph_order.empty()) {
        throw ValidationError(std::string("split '") + split_selector_name(split) + "' has no instances");
    }

    std::vector<std::vector<InstanceVerdict>> per_graph(graph_order.size());
    parallel_for(graph_order.size(), [&](std::size_t k) {
        const std::uint32_t gid = graph_order[k];
        const LinkRepresenter rep(ds.graphs[gid].graph, cfg);
        for (auto id : by_graph[gid]) {
            const auto& inst = ds.instances[id];
            try {
                const auto a = rep(inst.pair_a);
                const auto b = rep(inst.pair_b);
                per_graph[k].push_back({id, gid, a.digest(), b.digest(), !(a == b)});
            } catch (const Error& e) {
                throw Error(e.kind(), "instance " + std::to_string(id) + ": " + e.what());
            }
        }
    });

    ExactEvaluation out;
    out.config = cfg;
    std::size_t distinguished = 0;
    for (std::size_t k = 0; k < graph_order.size(); ++k) {
        out.any_truncated = out.any_truncated || ds.graphs[graph_order[k]].truncated;
        for (auto& v : per_graph[k]) {
            distinguished += v.distinguished ? 1 : 0;
            out.verdicts.push_back(v);
        }
    }
    std::sort(out.verdicts.begin(), out.verdicts.end(),
              [](const InstanceVerdict& a, const InstanceVerdict& b) { return a.instance_id < b.instance_id; });
    out.precision = static_cast<double>(distinguished) / static_cast<double>(out.verdicts.size());
    return out;
}

double exact_precision(const Dataset& ds, const ModelConfig& cfg, SplitSelector split) {
    return evaluate_exact(ds, cfg, split).precision;
}

}  // namespace linkexpr

#include "linkexpr/benchgen.hpp"

#include "linkexpr/parallel.hpp"
#include "linkexpr/wl.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace linkexpr {

void GenParams::validate() const {
    if (n_min < 2) throw ValidationError("n_min must be at least 2");
    if (n_max < n_min) throw ValidationError("n_max must be at least n_min");
    if (target_graph_count < 1) throw ValidationError("target graph count must be positive");
    if (max_attempts_per_graph < 1) throw ValidationError("max attempts per graph must be positive");
    if (pair_cap < 1) throw ValidationError("pair cap must be positive");
}

void SplitRatios::validate() const {
    for (double f : {train, validation, test}) {
        if (!(f > 0.0) || !std::isfinite(f)) throw ValidationError("split fractions must be positive");
    }
    if (std::abs(train + validation + test - 1.0) > 1e-9) throw ValidationError("split fractions must sum to 1");
}

std::array<std::size_t, 3> SplitRatios::sizes(std::size_t graph_count) const {
    const double shares[3] = {train, validation, test};
    std::array<std::size_t, 3> out{};
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
        out[static_cast<std::size_t>(i)] =
            static_cast<std::size_t>(std::floor(shares[i] * static_cast<double>(graph_count) + 1e-9));
        assigned += out[static_cast<std::size_t>(i)];
    }
    for (std::size_t i = 0; assigned < graph_count; i = (i + 1) % 3, ++assigned) ++out[i];
    return out;
}

BlockDraw draw_block_params(SplitMix64& rng, const GenParams& params) {
    BlockDraw d;
    d.block_size = static_cast<std::uint32_t>(rng.uniform_int(params.n_min, params.n_max));
    d.p = rng.uniform01();
    d.p_cross = rng.uniform01();
    return d;
}

Graph sample_two_block_graph(SplitMix64& rng, const BlockDraw& draw) {
    const NodeId n = draw.block_size;
    std::vector<Link> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.bernoulli(draw.p)) {
                edges.emplace_back(i, j);
                edges.emplace_back(n + i, n + j);
            }
        }
    }
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (rng.bernoulli(draw.p_cross)) edges.emplace_back(i, n + j);
        }
    }
    return Graph(2 * static_cast<std::size_t>(n), edges);
}

Graph sample_lrexp_graph(SplitMix64& rng, const GenParams& params) {
    params.validate();
    const BlockDraw draw = draw_block_params(rng, params);
    return sample_two_block_graph(rng, draw);
}

MinedPairs mine_test_pairs(const Graph& g, std::uint32_t pair_cap, const SearchLimits& limits) {
    const Coloring stable = wl_refine(g);
    const LinkOrbits orbits(g, stable, limits);
    const auto& links = orbits.links();

    const auto key = [&](const Link& l) {
        Color a = stable.colors[l.u];
        Color b = stable.colors[l.v];
        return std::pair(std::min(a, b), std::max(a, b));
    };

    MinedPairs out;
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto ki = key(links[i]);
        for (std::size_t j = i + 1; j < links.size(); ++j) {
            if (key(links[j]) != ki || orbits.orbit(i) == orbits.orbit(j)) continue;
            ++out.qualifying_total;
            if (out.instances.size() < pair_cap) {
                LinkPairInstance inst;
                inst.pair_a = links[i];
                inst.pair_b = links[j];
                out.instances.push_back(inst);
            }
        }
    }
    out.truncated = out.qualifying_total > out.instances.size();
    return out;
}

const char* split_name(Split s) {
    switch (s) {
        case Split::train: return "train";
        case Split::validation: return "validation";
        case Split::test: return "test";
    }
    return "?";
}

std::vector<std::uint32_t> Dataset::graph_ids(Split s) const {
    std::vector<std::uint32_t> ids;
    for (const auto& g : graphs) {
        if (g.split == s) ids.push_back(g.id);
    }
    return ids;
}

void Dataset::validate() const {
    provenance.params.validate();
    provenance.ratios.validate();
    std::vector<std::size_t> per_graph(graphs.size(), 0);
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (graphs[i].id != i) throw ValidationError("dataset: graph ids must be 0..G-1 in order");
    }
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const auto& inst = instances[k];
        const std::string where = "dataset: instance " + std::to_string(inst.instance_id);
        if (inst.instance_id != k) throw ValidationError(where + ": ids must be 0..I-1 in order");
        if (inst.graph_id >= graphs.size()) throw ValidationError(where + ": unknown graph_id " + std::to_string(inst.graph_id));
        const std::size_t n = graphs[inst.graph_id].graph.node_count();
        for (const Link& l : {inst.pair_a, inst.pair_b}) {
            if (l.u >= l.v || l.v >= n) throw ValidationError(where + ": invalid link");
        }
        if (inst.pair_a == inst.pair_b) throw ValidationError(where + ": pair_a equals pair_b");
        if (!inst.wl_matched || !inst.non_automorphic) throw ValidationError(where + ": non-qualifying instance stored");
        ++per_graph[inst.graph_id];
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        if (per_graph[i] == 0) throw ValidationError("dataset: graph " + std::to_string(i) + " has no instances");
    }
}

bool operator==(const SplitRatios& a, const SplitRatios& b) {
    return a.train == b.train && a.validation == b.validation && a.test == b.test;
}

bool operator==(const GenParams& a, const GenParams& b) {
    return a.n_min == b.n_min && a.n_max == b.n_max && a.seed == b.seed &&
           a.target_graph_count == b.target_graph_count && a.max_attempts_per_graph == b.max_attempts_per_graph &&
           a.pair_cap == b.pair_cap;
}

bool operator==(const Provenance& a, const Provenance& b) {
    return a.params == b.params && a.ratios == b.ratios && a.generator_version == b.generator_version &&
           a.attempts_used == b.attempts_used;
}

bool operator==(const Dataset& a, const Dataset& b) {
    return a.provenance == b.provenance && a.graphs == b.graphs && a.instances == b.instances;
}

PartialDatasetError::PartialDatasetError(std::size_t achieved, std::size_t target)
    : ValidationError("attempts exhausted: generated " + std::to_string(achieved) + " of " +
                      std::to_string(target) + " graphs"),
      achieved_(achieved) {}

Dataset build_dataset(const GenParams& params, const SplitRatios& ratios) {
    params.validate();
    ratios.validate();

    struct Attempt {
        std::optional<DatasetGraph> kept;
        MinedPairs mined;
    };

    Dataset ds;
    ds.provenance.params = params;
    ds.provenance.ratios = ratios;

    std::vector<MinedPairs> mined_for_kept;
    const std::uint64_t budget = std::uint64_t{params.target_graph_count} * params.max_attempts_per_graph;
    std::uint64_t next_attempt = 0;
    while (ds.graphs.size() < params.target_graph_count && next_attempt < budget) {
        const std::uint64_t missing = params.target_graph_count - ds.graphs.size();
        const std::uint64_t batch = std::min<std::uint64_t>(budget - next_attempt,
                                                            std::max<std::uint64_t>(missing, 4 * worker_count()));
        std::vector<Attempt> results(batch);
        parallel_for(batch, [&](std::size_t i) {
            const std::uint64_t attempt = next_attempt + i;
            SplitMix64 rng(derive_seed(params.seed, "graph", attempt));
            DatasetGraph dg;
            dg.draw = draw_block_params(rng, params);
            dg.graph = sample_two_block_graph(rng, dg.draw);
            dg.attempt = attempt;
            results[i].mined = mine_test_pairs(dg.graph, params.pair_cap);
            if (!results[i].mined.instances.empty()) results[i].kept = std::move(dg);
        });
        for (std::uint64_t i = 0; i < batch; ++i) {
            ++next_attempt;
            if (!results[i].kept) continue;
            DatasetGraph dg = std::move(*results[i].kept);
            dg.id = static_cast<std::uint32_t>(ds.graphs.size());
            dg.qualifying_total = results[i].mined.qualifying_total;
            dg.truncated = results[i].mined.truncated;
            for (auto inst : results[i].mined.instances) {
                inst.graph_id = dg.id;
                inst.instance_id = static_cast<std::uint32_t>(ds.instances.size());
                ds.instances.push_back(inst);
            }
            ds.graphs.push_back(std::move(dg));
            if (ds.graphs.size() == params.target_graph_count) break;
        }
    }
    ds.provenance.attempts_used = next_attempt;
    if (ds.graphs.size() < params.target_graph_count) {
        throw PartialDatasetError(ds.graphs.size(), params.target_graph_count);
    }

    std::vector<std::uint32_t> order(ds.graphs.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    SplitMix64 rng(derive_seed(params.seed, "split", 0));
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.uniform_int(0, i - 1)]);
    }
    const auto sizes = ratios.sizes(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        Split s = k < sizes[0] ? Split::train : (k < sizes[0] + sizes[1] ? Split::validation : Split::test);
        ds.graphs[order[k]].split = s;
    }
    return ds;
}

std::vector<std::uint32_t> reverify_instances(const Dataset& ds, const SearchLimits& limits) {
    std::vector<std::vector<std::uint32_t>> by_graph(ds.graphs.size());
    for (const auto& inst : ds.instances) by_graph.at(inst.graph_id).push_back(inst.instance_id);
    std::vector<std::vector<std::uint32_t>> failures(ds.graphs.size());
    parallel_for(ds.graphs.size(), [&](std::size_t gi) {
        const Graph& g = ds.graphs[gi].graph;
        const Coloring stable = wl_refine(g);
        for (auto id : by_graph[gi]) {
            const auto& inst = ds.instances[id];
            auto ka = std::minmax(stable.colors[inst.pair_a.u], stable.colors[inst.pair_a.v]);
            auto kb = std::minmax(stable.colors[inst.pair_b.u], stable.colors[inst.pair_b.v]);
            if (ka != kb || are_links_automorphic(g, inst.pair_a, inst.pair_b, limits)) failures[gi].push_back(id);
        }
    });
    std::vector<std::uint32_t> out;
    for (auto& f : failures) out.insert(out.end(), f.begin(), f.end());
    return out;
}

}  // namespace linkexpr

#include "linkexpr/benchgen.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace linkexpr {

using Json = nlohmann::ordered_json;

namespace {

Json link_json(const Link& l) { return Json::array({l.u, l.v}); }

Link link_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("dataset: link must be a two-element array");
    auto a = j[0].get<NodeId>();
    auto b = j[1].get<NodeId>();
    if (a == b) throw ValidationError("dataset: link endpoints must differ");
    return Link(a, b);
}

template <typename T>
T field(const Json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) throw ValidationError(std::string("dataset: missing field '") + name + "'");
    try {
        return obj.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("dataset: bad field '") + name + "': " + e.what());
    }
}

}  // namespace

std::string dataset_to_json(const Dataset& ds) {
    Json root;
    root["version"] = kDatasetFormatVersion;
    const auto& p = ds.provenance.params;
    root["provenance"] = {
        {"generator_version", ds.provenance.generator_version},
        {"seed", p.seed},
        {"n_min", p.n_min},
        {"n_max", p.n_max},
        {"target_graph_count", p.target_graph_count},
        {"max_attempts_per_graph", p.max_attempts_per_graph},
        {"pair_cap", p.pair_cap},
        {"split_ratios", Json::array({ds.provenance.ratios.train, ds.provenance.ratios.validation,
                                      ds.provenance.ratios.test})},
        {"attempts_used", ds.provenance.attempts_used},
    };
    Json graphs = Json::array();
    for (const auto& dg : ds.graphs) {
        Json edges = Json::array();
        for (const Link& e : dg.graph.edges()) edges.push_back(link_json(e));
        Json g = {
            {"id", dg.id},
            {"n", dg.graph.node_count()},
            {"edges", std::move(edges)},
            {"block_size", dg.draw.block_size},
            {"p", dg.draw.p},
            {"p_cross", dg.draw.p_cross},
            {"attempt", dg.attempt},
            {"qualifying_pairs", dg.qualifying_total},
            {"truncated", dg.truncated},
        };
        if (dg.graph.has_labels()) g["labels"] = *dg.graph.labels();
        graphs.push_back(std::move(g));
    }
    root["graphs"] = std::move(graphs);
    Json instances = Json::array();
    for (const auto& inst : ds.instances) {
        instances.push_back({
            {"id", inst.instance_id},
            {"graph_id", inst.graph_id},
            {"pair_a", link_json(inst.pair_a)},
            {"pair_b", link_json(inst.pair_b)},
            {"wl_matched", inst.wl_matched},
            {"non_automorphic", inst.non_automorphic},
        });
    }
    root["instances"] = std::move(instances);
    Json splits;
    for (Split s : {Split::train, Split::validation, Split::test}) splits[split_name(s)] = ds.graph_ids(s);
    root["splits"] = std::move(splits);
    return root.dump(1) + "\n";
}

Dataset dataset_from_json(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(0, std::string("dataset JSON: ") + e.what());
    }
    if (!root.is_object()) throw ValidationError("dataset: top level must be an object");
    const int version = field<int>(root, "version");
    if (version != kDatasetFormatVersion) {
        throw ValidationError("dataset: version mismatch (file " + std::to_string(version) + ", expected " +
                              std::to_string(kDatasetFormatVersion) + ")");
    }

    Dataset ds;
    const Json& prov = root.at("provenance");
    auto& p = ds.provenance.params;
    ds.provenance.generator_version = field<std::string>(prov, "generator_version");
    p.seed = field<std::uint64_t>(prov, "seed");
    p.n_min = field<std::uint32_t>(prov, "n_min");
    p.n_max = field<std::uint32_t>(prov, "n_max");
    p.target_graph_count = field<std::uint32_t>(prov, "target_graph_count");
    p.max_attempts_per_graph = field<std::uint32_t>(prov, "max_attempts_per_graph");
    p.pair_cap = field<std::uint32_t>(prov, "pair_cap");
    auto ratios = field<std::vector<double>>(prov, "split_ratios");
    if (ratios.size() != 3) throw ValidationError("dataset: split_ratios must have three entries");
    ds.provenance.ratios = {ratios[0], ratios[1], ratios[2]};
    ds.provenance.attempts_used = field<std::uint64_t>(prov, "attempts_used");

    for (const Json& g : field<Json>(root, "graphs")) {
        DatasetGraph dg;
        dg.id = field<std::uint32_t>(g, "id");
        std::vector<Link> edges;
        for (const Json& e : field<Json>(g, "edges")) edges.push_back(link_from(e));
        std::optional<std::vector<Label>> labels;
        if (g.contains("labels")) labels = field<std::vector<Label>>(g, "labels");
        dg.graph = Graph(field<std::size_t>(g, "n"), edges, std::move(labels));
        if (dg.graph.edge_count() != edges.size()) throw ValidationError("dataset: duplicate edges in graph " + std::to_string(dg.id));
        dg.draw.block_size = field<std::uint32_t>(g, "block_size");
        dg.draw.p = field<double>(g, "p");
        dg.draw.p_cross = field<double>(g, "p_cross");
        dg.attempt = field<std::uint64_t>(g, "attempt");
        dg.qualifying_total = field<std::size_t>(g, "qualifying_pairs");
        dg.truncated = field<bool>(g, "truncated");
        ds.graphs.push_back(std::move(dg));
    }
    for (const Json& j : field<Json>(root, "instances")) {
        LinkPairInstance inst;
        inst.instance_id = field<std::uint32_t>(j, "id");
        inst.graph_id = field<std::uint32_t>(j, "graph_id");
        inst.pair_a = link_from(field<Json>(j, "pair_a"));
        inst.pair_b = link_from(field<Json>(j, "pair_b"));
        inst.wl_matched = field<bool>(j, "wl_matched");
        inst.non_automorphic = field<bool>(j, "non_automorphic");
        ds.instances.push_back(inst);
    }

    const Json& splits = field<Json>(root, "splits");
    std::vector<int> seen(ds.graphs.size(), 0);
    for (Split s : {Split::train, Split::validation, Split::test}) {
        for (auto id : field<std::vector<std::uint32_t>>(splits, split_name(s))) {
            if (id >= ds.graphs.size()) throw ValidationError("dataset: split references unknown graph " + std::to_string(id));
            ++seen[id];
            ds.graphs[id].split = s;
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] != 1) throw ValidationError("dataset: splits do not partition graph ids (graph " + std::to_string(i) + ")");
    }
    ds.validate();
    return ds;
}

void write_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << dataset_to_json(ds);
    if (!out) throw IoError("write failed for " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return dataset_from_json(buffer.str());
}

}  // namespace linkexpr

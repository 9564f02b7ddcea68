#include "linkexpr/linkrep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <limits>

namespace linkexpr {

namespace {

constexpr std::uint32_t kFar = DistanceVector::kUnreachable;

// Section markers inside canonical forms.
enum Tag : std::uint64_t {
    kHeader = 0x4C52,  // "LR"
    kEndpoints = 1,
    kCommon = 2,
    kElph = 3,
    kStructural = 4,
    kPairwise = 5,
    kSubgraph = 6,
};

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw NumericalError("walk count overflow");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw NumericalError("walk count overflow");
    return r;
}

void check_link(const Graph& g, NodeId u, NodeId v) {
    if (u >= g.node_count() || v >= g.node_count()) {
        throw ValidationError("link (" + std::to_string(u) + "," + std::to_string(v) + ") out of range (n=" +
                              std::to_string(g.node_count()) + ")");
    }
    if (u == v) throw ValidationError("link endpoints must differ");
}

std::vector<std::uint64_t> header(const ModelConfig& cfg) {
    std::vector<std::uint64_t> form{kHeader, static_cast<std::uint64_t>(cfg.kind), cfg.l};
    switch (cfg.kind) {
        case ModelKind::pure:
        case ModelKind::ncn: break;
        case ModelKind::elph:
        case ModelKind::neognn: form.push_back(cfg.m); break;
        case ModelKind::seal:
            form.push_back(cfg.h_hops);
            form.push_back(cfg.drnl_distance_pairs ? 1 : 0);
            break;
    }
    return form;
}

ModelConfig config_for(ModelKind kind, std::uint32_t m, std::uint32_t l) {
    ModelConfig cfg;
    cfg.kind = kind;
    cfg.m = m;
    cfg.l = l;
    cfg.h_hops = m;
    return cfg;
}

}  // namespace

const char* model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::pure: return "pure";
        case ModelKind::ncn: return "ncn";
        case ModelKind::elph: return "elph";
        case ModelKind::neognn: return "neognn";
        case ModelKind::seal: return "seal";
    }
    return "?";
}

ModelKind parse_model(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "pure" || lower == "gnn") return ModelKind::pure;
    if (lower == "ncn") return ModelKind::ncn;
    if (lower == "elph") return ModelKind::elph;
    if (lower == "neognn" || lower == "neo-gnn") return ModelKind::neognn;
    if (lower == "seal") return ModelKind::seal;
    throw ValidationError("unknown model '" + std::string(name) + "'");
}

void ModelConfig::validate() const {
    if (kind == ModelKind::elph && m < 1) throw ValidationError("ELPH requires m >= 1");
    if (kind == ModelKind::neognn && !(beta > 0.0 && beta < 1.0)) throw ValidationError("Neo-GNN requires beta in (0,1)");
    if (kind == ModelKind::seal && h_hops < 1) throw ValidationError("SEAL requires h >= 1");
}

LinkRepresentation::LinkRepresentation(ModelKind kind, std::vector<std::uint64_t> canonical_form)
    : kind_(kind), form_(std::move(canonical_form)), digest_(digest128(form_)) {}

bool operator==(const LinkRepresentation& a, const LinkRepresentation& b) {
    if (a.digest_ != b.digest_) return false;
    if (a.form_ != b.form_) throw DigestCollision("digest collision between distinct canonical forms " + a.digest_.hex());
    return true;
}

struct LinkRepresenter::State {
    Graph graph;
    ModelConfig cfg;
    std::size_t n = 0;
    Coloring colors;                        // l-round coloring of the full graph
    std::vector<std::uint32_t> dist;        // n*n, kFar when unreachable
    std::vector<std::vector<std::uint64_t>> walks;  // walks[k-1] = A^k, n*n
    std::vector<std::vector<std::uint64_t>> structural;  // per node, length m

    std::uint32_t d(NodeId a, NodeId b) const { return dist[a * n + b]; }

    void endpoints(std::vector<std::uint64_t>& form, NodeId u, NodeId v) const {
        auto [lo, hi] = std::minmax(colors.colors[u], colors.colors[v]);
        form.insert(form.end(), {kEndpoints, lo, hi});
    }

    LinkRepresentation pure(NodeId u, NodeId v) const {
        auto form = header(cfg);
        endpoints(form, u, v);
        return {ModelKind::pure, std::move(form)};
    }

    LinkRepresentation ncn(NodeId u, NodeId v) const {
        auto form = header(cfg);
        endpoints(form, u, v);
        std::vector<std::uint64_t> common;
        auto nu = graph.neighbors(u);
        auto nv = graph.neighbors(v);
        std::vector<NodeId> shared;
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(shared));
        for (NodeId i : shared) common.push_back(colors.colors[i]);
        std::sort(common.begin(), common.end());
        form.insert(form.end(), {kCommon, common.size()});
        form.insert(form.end(), common.begin(), common.end());
        return {ModelKind::ncn, std::move(form)};
    }

    ElphCounts elph(NodeId u, NodeId v) const {
        const std::uint32_t m = cfg.m;
        ElphCounts c;
        c.m = m;
        c.a.assign(static_cast<std::size_t>(m) * m, 0);
        c.b_u.assign(m, 0);
        c.b_v.assign(m, 0);
        for (NodeId i = 0; i < n; ++i) {
            const std::uint32_t du = d(u, i);
            const std::uint32_t dv = d(v, i);
            const bool u_in = du >= 1 && du <= m;
            const bool v_in = dv >= 1 && dv <= m;
            if (u_in && v_in) ++c.a[(du - 1) * m + (dv - 1)];
            // kFar compares greater than every radius: unreachable counts as farther.
            if (u_in && dv > du) ++c.b_u[du - 1];
            if (v_in && du > dv) ++c.b_v[dv - 1];
        }
        return c;
    }

    LinkRepresentation elph_rep(NodeId u, NodeId v) const {
        const ElphCounts c = elph(u, v);
        const std::uint32_t m = cfg.m;
        // Oriented serialization from x's side; the smaller orientation is kept.
        auto oriented = [&](bool from_u) {
            std::vector<std::uint64_t> part{kElph, from_u ? colors.colors[u] : colors.colors[v],
                                            from_u ? colors.colors[v] : colors.colors[u]};
            for (std::uint32_t i = 0; i < m; ++i) {
                for (std::uint32_t j = 0; j < m; ++j) part.push_back(from_u ? c.a[i * m + j] : c.a[j * m + i]);
            }
            const auto& bx = from_u ? c.b_u : c.b_v;
            const auto& by = from_u ? c.b_v : c.b_u;
            part.insert(part.end(), bx.begin(), bx.end());
            part.insert(part.end(), by.begin(), by.end());
            return part;
        };
        auto form = header(cfg);
        endpoints(form, u, v);
        auto a = oriented(true);
        auto b = oriented(false);
        const auto& chosen = std::min(a, b);
        form.insert(form.end(), chosen.begin(), chosen.end());
        return {ModelKind::elph, std::move(form)};
    }

    LinkRepresentation neognn(NodeId u, NodeId v) const {
        const std::uint32_t m = cfg.m;
        auto form = header(cfg);
        endpoints(form, u, v);
        auto zs = std::minmax(structural[u], structural[v]);
        form.insert(form.end(), {kStructural, m});
        form.insert(form.end(), zs.first.begin(), zs.first.end());
        form.insert(form.end(), zs.second.begin(), zs.second.end());

        std::vector<std::array<std::uint64_t, 2>> pairwise;
        for (NodeId i = 0; i < n; ++i) {
            if (d(u, i) > m && d(v, i) > m) continue;  // outside the cumulative m-neighborhood
            std::uint64_t from_u = 0;
            std::uint64_t from_v = 0;
            for (std::uint32_t k = 0; k < m; ++k) {
                from_u = checked_add(from_u, walks[k][u * n + i]);
                from_v = checked_add(from_v, walks[k][v * n + i]);
            }
            // sum_r sum_d (A^r)_{u,i} (A^d)_{v,i} factorizes into the product of the two sums.
            pairwise.push_back({checked_mul(from_u, from_v), colors.colors[i]});
        }
        std::sort(pairwise.begin(), pairwise.end());
        form.insert(form.end(), {kPairwise, pairwise.size()});
        for (const auto& p : pairwise) form.insert(form.end(), p.begin(), p.end());
        return {ModelKind::neognn, std::move(form)};
    }

    LinkRepresentation seal(NodeId u, NodeId v) const {
        const std::uint32_t h = cfg.h_hops;
        std::vector<NodeId> nodes;
        for (NodeId i = 0; i < n; ++i) {
            if (d(u, i) <= h || d(v, i) <= h) nodes.push_back(i);
        }
        const Graph sub = graph.induced_subgraph(nodes);
        const auto lu = static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), u) - nodes.begin());
        const auto lv = static_cast<NodeId>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
        const auto du = bfs_distances(sub, lu);
        const auto dv = bfs_distances(sub, lv);

        std::vector<std::vector<std::uint64_t>> init(sub.node_count());
        for (NodeId i = 0; i < sub.node_count(); ++i) {
            const std::uint32_t a = du.raw()[i];
            const std::uint32_t b = dv.raw()[i];
            init[i].push_back(sub.label(i));
            if (cfg.drnl_distance_pairs) {
                init[i].push_back(std::min(a, b));
                init[i].push_back(std::max(a, b));
            } else {
                const std::uint32_t nearest = std::min(a, b);
                init[i].push_back(nearest == kFar ? 0 : nearest + 1);
            }
        }
        const auto fp = wl_fingerprints(sub, init, cfg.l);

        auto form = header(cfg);
        auto [eu, ev] = std::minmax(fp[lu], fp[lv]);
        form.insert(form.end(), {kEndpoints, eu.words[0], eu.words[1], ev.words[0], ev.words[1]});
        std::vector<Digest128> all(fp.begin(), fp.end());
        std::sort(all.begin(), all.end());
        form.insert(form.end(), {kSubgraph, all.size()});
        for (const auto& c : all) form.insert(form.end(), c.words.begin(), c.words.end());
        return {ModelKind::seal, std::move(form)};
    }
};

LinkRepresenter::LinkRepresenter(const Graph& g, const ModelConfig& cfg) : state_(std::make_unique<State>()) {
    cfg.validate();
    State& s = *state_;
    s.graph = g;
    s.cfg = cfg;
    s.n = g.node_count();
    s.colors = wl_rounds(g, cfg.l);
    if (cfg.kind == ModelKind::pure || cfg.kind == ModelKind::ncn) return;

    s.dist.assign(s.n * s.n, kFar);
    for (NodeId a = 0; a < s.n; ++a) {
        const auto row = bfs_distances(g, a);
        std::copy(row.raw().begin(), row.raw().end(), s.dist.begin() + static_cast<std::ptrdiff_t>(a * s.n));
    }
    if (cfg.kind != ModelKind::neognn) return;

    const std::size_t n = s.n;
    std::vector<std::uint64_t> adj(n * n, 0);
    for (const Link& e : g.edges()) {
        adj[e.u * n + e.v] = 1;
        adj[e.v * n + e.u] = 1;
    }
    if (cfg.m > 0) s.walks.push_back(adj);
    for (std::uint32_t k = 1; k < cfg.m; ++k) {
        const auto& prev = s.walks.back();
        std::vector<std::uint64_t> next(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
                for (std::size_t c = 0; c < n; ++c) next[i * n + c] = checked_add(next[i * n + c], prev[j * n + c]);
            }
        }
        s.walks.push_back(std::move(next));
    }
    s.structural.assign(n, std::vector<std::uint64_t>(cfg.m, 0));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::uint32_t k = 0; k < cfg.m; ++k) {
            std::uint64_t z = 0;
            for (std::size_t j = 0; j < n; ++j) {
                z = checked_add(z, checked_mul(s.walks[k][v * n + j], g.degree(static_cast<NodeId>(j))));
            }
            s.structural[v][k] = z;
        }
    }
}

LinkRepresenter::~LinkRepresenter() = default;
LinkRepresenter::LinkRepresenter(LinkRepresenter&&) noexcept = default;

LinkRepresentation LinkRepresenter::operator()(NodeId u, NodeId v) const {
    check_link(state_->graph, u, v);
    switch (state_->cfg.kind) {
        case ModelKind::pure: return state_->pure(u, v);
        case ModelKind::ncn: return state_->ncn(u, v);
        case ModelKind::elph: return state_->elph_rep(u, v);
        case ModelKind::neognn: return state_->neognn(u, v);
        case ModelKind::seal: return state_->seal(u, v);
    }
    throw ValidationError("unknown model kind");
}

ElphCounts LinkRepresenter::elph_counts(NodeId u, NodeId v) const {
    check_link(state_->graph, u, v);
    if (state_->dist.empty()) throw ValidationError("elph_counts needs an ELPH, Neo-GNN or SEAL representer");
    return state_->elph(u, v);
}

LinkRepresentation represent(const Graph& g, NodeId u, NodeId v, const ModelConfig& cfg) {
    return LinkRepresenter(g, cfg)(u, v);
}

LinkRepresentation pure_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t l) {
    return represent(g, u, v, config_for(ModelKind::pure, 0, l));
}

LinkRepresentation ncn_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t l) {
    return represent(g, u, v, config_for(ModelKind::ncn, 1, l));
}

ElphCounts elph_counts(const Graph& g, NodeId u, NodeId v, std::uint32_t m) {
    return LinkRepresenter(g, config_for(ModelKind::elph, m, 0)).elph_counts(u, v);
}

LinkRepresentation elph_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t m, std::uint32_t l) {
    return represent(g, u, v, config_for(ModelKind::elph, m, l));
}

LinkRepresentation neognn_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t m, std::uint32_t l, double beta) {
    auto cfg = config_for(ModelKind::neognn, m, l);
    cfg.beta = beta;
    return represent(g, u, v, cfg);
}

std::vector<std::uint64_t> neognn_structural_vector(const Graph& g, NodeId v, std::uint32_t m) {
    if (v >= g.node_count()) throw ValidationError("node out of range");
    std::vector<std::uint64_t> out(m, 0);
    std::vector<std::uint64_t> current(g.node_count(), 0);
    for (NodeId j = 0; j < g.node_count(); ++j) current[j] = g.degree(j);
    for (std::uint32_t k = 0; k < m; ++k) {
        std::vector<std::uint64_t> next(g.node_count(), 0);
        for (NodeId i = 0; i < g.node_count(); ++i) {
            for (NodeId j : g.neighbors(i)) next[i] = checked_add(next[i], current[j]);
        }
        current = std::move(next);
        out[k] = current[v];
    }
    return out;
}

EnclosingSubgraph enclosing_subgraph(const Graph& g, NodeId u, NodeId v, std::uint32_t h) {
    check_link(g, u, v);
    if (h < 1) throw ValidationError("enclosing subgraph radius must be at least 1");
    EnclosingSubgraph out;
    out.node_map = joint_neighborhood(g, u, v, h, true);
    out.graph = g.induced_subgraph(out.node_map);
    out.u = static_cast<NodeId>(std::lower_bound(out.node_map.begin(), out.node_map.end(), u) - out.node_map.begin());
    out.v = static_cast<NodeId>(std::lower_bound(out.node_map.begin(), out.node_map.end(), v) - out.node_map.begin());
    return out;
}

std::vector<Label> drnl_labels(const Graph& sub, NodeId u, NodeId v) {
    check_link(sub, u, v);
    const auto du = bfs_distances(sub, u);
    const auto dv = bfs_distances(sub, v);
    std::vector<Label> labels(sub.node_count());
    for (NodeId i = 0; i < sub.node_count(); ++i) {
        const std::uint32_t nearest = std::min(du.raw()[i], dv.raw()[i]);
        labels[i] = nearest == kFar ? 0 : nearest + 1;
    }
    return labels;
}

LinkRepresentation seal_rep(const Graph& g, NodeId u, NodeId v, std::uint32_t h, std::uint32_t l,
                            bool distance_pairs) {
    ModelConfig cfg = config_for(ModelKind::seal, h, l);
    cfg.h_hops = h;
    cfg.drnl_distance_pairs = distance_pairs;
    return represent(g, u, v, cfg);
}

}  // namespace linkexpr

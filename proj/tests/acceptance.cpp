// Acceptance suite: one PASS/FAIL line per criterion.

#include "linkexpr/automorphism.hpp"
#include "linkexpr/benchgen.hpp"
#include "linkexpr/evaluation.hpp"
#include "linkexpr/fdist.hpp"
#include "linkexpr/pipeline.hpp"
#include "linkexpr/rpc.hpp"
#include "linkexpr/wl.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>

using namespace linkexpr;
namespace fs = std::filesystem;

namespace {

int g_failed = 0;

void report(int id, const char* name, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %d %s: %s (%.1fs)\n", ok ? "PASS" : "FAIL", id, name, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failed;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

ModelConfig model(ModelKind k) {
    ModelConfig c;
    c.kind = k;
    c.m = 3;
    c.l = 3;
    return c;
}

const Dataset& desk_dataset() {
    static const Dataset ds = [] {
        GenParams p;
        p.seed = 20250101;
        p.target_graph_count = 1400;
        return build_dataset(p);
    }();
    return ds;
}

}  // namespace

int main() {
    report(1, "pure-zero-precision", [](std::string& d) {
        const auto& ds = desk_dataset();
        const double p = exact_precision(ds, model(ModelKind::pure), SplitSelector::test);
        d = std::to_string(ds.graphs.size()) + " graphs, test precision " + fmt("%.17g", p);
        return ds.graphs.size() >= 200 && p == 0.0;
    });

    report(2, "hierarchy", [](std::string& d) {
        const auto& ds = desk_dataset();
        double p[5];
        const ModelKind kinds[5] = {ModelKind::pure, ModelKind::ncn, ModelKind::elph, ModelKind::neognn, ModelKind::seal};
        for (int i = 0; i < 5; ++i) p[i] = exact_precision(ds, model(kinds[i]), SplitSelector::test);
        const auto [pure, ncn, elph, neo, seal] = std::tuple(p[0], p[1], p[2], p[3], p[4]);
        d = "pure " + fmt("%.3f", pure) + ", ncn " + fmt("%.3f", ncn) + ", elph " + fmt("%.3f", elph) + ", neognn " +
            fmt("%.3f", neo) + ", seal " + fmt("%.3f", seal);
        std::string broken;
        if (!(seal >= ncn)) broken += " seal<ncn";
        if (!(ncn >= elph)) broken += " ncn<elph";
        if (!(elph >= pure)) broken += " elph<pure";
        if (!(neo >= elph)) broken += " neognn<elph";
        if (!(seal - pure >= 0.5)) broken += " seal-pure<0.5";
        if (!broken.empty()) d += "; violated:" + broken;
        return broken.empty();
    });

    report(3, "symmetry-identities", [](std::string& d) {
        int bad = 0;
        for (std::size_t n = 5; n <= 12; ++n) {
            bad += symmetry_exact(oracle::cycle(n)) != 1.0;
            bad += symmetry_wl(oracle::cycle(n)) != 1.0;
        }
        for (std::size_t n = 3; n <= 8; ++n) {
            bad += symmetry_exact(oracle::complete(n)) != 1.0;
            bad += symmetry_wl(oracle::complete(n)) != 1.0;
        }
        const Graph p3(3, {{0, 1}, {1, 2}});
        bad += symmetry_exact(p3) != 0.5;
        bad += symmetry_wl(p3) != 0.5;
        const Graph asym = oracle::asymmetric6();
        bad += oracle::all_automorphisms(asym).size() != 1;
        bad += symmetry_exact(asym) != 0.0;
        bad += symmetry_wl(asym) != 0.0;
        d = std::to_string(bad) + " mismatches";
        return bad == 0;
    });

    report(4, "wl-orbit-bound", [](std::string& d) {
        SplitMix64 rng(derive_seed(4, "acceptance", 0));
        int violations = 0;
        for (int t = 0; t < 1000; ++t) {
            const std::size_t n = 1 + rng.uniform_int(0, 11);
            const Graph g = oracle::random_graph(rng, n, rng.uniform01());
            const auto colors = wl_refine(g);
            const auto orb = orbits(g);
            if (symmetry_measure(n, colors.class_count) < symmetry_measure(n, orb.orbit_count)) ++violations;
            for (NodeId a = 0; a < n; ++a)
                for (NodeId b = a + 1; b < n; ++b)
                    if (orb.orbit_id[a] == orb.orbit_id[b] && colors.colors[a] != colors.colors[b]) ++violations;
        }
        d = "1000 graphs, " + std::to_string(violations) + " violations";
        return violations == 0;
    });

    report(5, "automorphism-oracle", [](std::string& d) {
        SplitMix64 rng(derive_seed(5, "acceptance", 0));
        int mismatches = 0;
        for (int t = 0; t < 500; ++t) {
            const std::size_t n = 1 + rng.uniform_int(0, 7);
            const Graph g = oracle::random_graph(rng, n, rng.uniform01());
            const auto ref = oracle::all_automorphisms(g);
            const auto set = enumerate_automorphisms(g);
            bool same = set.order() == ref.size();
            for (const auto& p : ref) same = same && set.contains(Permutation(p));
            mismatches += !same;
        }
        d = "500 graphs, " + std::to_string(mismatches) + " mismatches";
        return mismatches == 0;
    });

    report(6, "hotelling-calibration", [](std::string& d) {
        SplitMix64 rng(derive_seed(6, "acceptance", 0));
        bool ok = true;
        for (auto [q, dim] : {std::pair<int, int>{20, 2}, {50, 4}}) {
            const double threshold = rpc_threshold(static_cast<std::size_t>(q), static_cast<std::size_t>(dim), 0.05);
            const int trials = 100000;
            int rejections = 0;
            Eigen::MatrixXd x(q, dim);
            for (int t = 0; t < trials; ++t) {
                for (int i = 0; i < q; ++i)
                    for (int j = 0; j < dim; ++j) x(i, j) = rng.normal();
                rejections += hotelling_t2(x) > threshold;
            }
            const double rate = static_cast<double>(rejections) / trials;
            d += "(q=" + std::to_string(q) + ",d=" + std::to_string(dim) + ") " + fmt("%.4f", rate) + " ";
            ok = ok && std::abs(rate - 0.05) <= 0.01;
        }
        return ok;
    });

    report(7, "f-quantile", [](std::string& d) {
        const double o1 = oracle::f_upper_quantile(1, 2, 0.05);
        const double o2 = oracle::f_upper_quantile(2, 10, 0.05);
        const double f1 = f_upper_quantile(1, 2, 0.05);
        const double f2 = f_upper_quantile(2, 10, 0.05);
        d = "F(1,2)=" + fmt("%.6f", f1) + " oracle " + fmt("%.6f", o1) + ", F(2,10)=" + fmt("%.6f", f2) + " oracle " +
            fmt("%.6f", o2);
        return std::abs(o1 - 18.513) <= 1e-3 && std::abs(o2 - 4.103) <= 1e-3 && std::abs(f1 - o1) <= 1e-3 &&
               std::abs(f2 - o2) <= 1e-3;
    });

    report(8, "permutation-invariance", [](std::string& d) {
        SplitMix64 rng(derive_seed(8, "acceptance", 0));
        GenParams params;
        int failures = 0;
        for (int t = 0; t < 200; ++t) {
            const Graph g = sample_lrexp_graph(rng, params);
            const std::size_t n = g.node_count();
            const Permutation p = random_permutation(rng, n);
            const Graph h = apply_permutation(g, p);
            const NodeId u = static_cast<NodeId>(rng.uniform_int(0, n - 1));
            const NodeId v = static_cast<NodeId>((u + 1 + rng.uniform_int(0, n - 2)) % n);
            for (ModelKind k : {ModelKind::pure, ModelKind::ncn, ModelKind::elph, ModelKind::neognn, ModelKind::seal}) {
                failures += represent(g, u, v, model(k)).digest() != represent(h, p(u), p(v), model(k)).digest();
            }
        }
        d = "200 triples x 5 models, " + std::to_string(failures) + " failures";
        return failures == 0;
    });

    report(9, "run-determinism", [](std::string& d) {
        const auto cfg = parse_pipeline_config(
            R"({"seed": 20250101, "count": 200, "models": ["pure", "ncn", "elph", "neognn", "seal"], "alpha": 0.05})");
        const fs::path a = fs::temp_directory_path() / "linkexpr_acceptance_a";
        const fs::path b = fs::temp_directory_path() / "linkexpr_acceptance_b";
        fs::remove_all(a);
        fs::remove_all(b);
        const auto ma = run_pipeline(cfg, a.string());
        run_pipeline(cfg, b.string());
        int differing = 0;
        for (const auto& f : ma.outputs) {
            differing += read_text_file((a / f.name).string()) != read_text_file((b / f.name).string());
        }
        d = std::to_string(ma.outputs.size()) + " artifacts, " + std::to_string(differing) + " differ";
        fs::remove_all(a);
        fs::remove_all(b);
        return differing == 0 && ma.outputs.size() >= 8;
    });

    std::printf("%d of 9 criteria passed\n", 9 - g_failed);
    return 0;
}

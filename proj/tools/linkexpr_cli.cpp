#include "linkexpr/automorphism.hpp"
#include "linkexpr/benchgen.hpp"
#include "linkexpr/evaluation.hpp"
#include "linkexpr/parallel.hpp"
#include "linkexpr/pipeline.hpp"
#include "linkexpr/report.hpp"
#include "linkexpr/rpc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace linkexpr;
namespace fs = std::filesystem;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir = ".";
    std::size_t threads = 0;
};

struct ModelFlags {
    std::vector<std::string> models{"pure", "ncn", "elph", "neognn", "seal"};
    std::uint32_t m = 3;
    std::uint32_t l = 3;
    double beta = 0.5;
    std::uint32_t h = 3;
    bool drnl_pairs = false;
    std::string split = "test";

    void attach(CLI::App* cmd, bool many) {
        if (many) {
            cmd->add_option("--models,--model", models, "Model kinds")->delimiter(',');
        } else {
            cmd->add_option("--model", models, "Model kind")->expected(1);
        }
        cmd->add_option("--m", m, "Link-neighborhood radius");
        cmd->add_option("--l", l, "Message-passing rounds");
        cmd->add_option("--beta", beta, "Neo-GNN hop decay");
        cmd->add_option("--hops", h, "SEAL enclosing-subgraph radius");
        cmd->add_flag("--drnl-pairs", drnl_pairs, "SEAL: label by sorted distance pair");
        cmd->add_option("--split", split, "train, validation, test or all");
    }

    std::vector<ModelConfig> configs() const {
        std::vector<ModelConfig> out;
        for (const auto& name : models) {
            ModelConfig mc;
            mc.kind = parse_model(name);
            mc.m = m;
            mc.l = l;
            mc.beta = beta;
            mc.h_hops = h;
            mc.drnl_distance_pairs = drnl_pairs;
            mc.validate();
            out.push_back(mc);
        }
        return out;
    }
};

std::string in_out_dir(const Globals& g, const std::string& path, const std::string& fallback) {
    if (!path.empty()) return path;
    fs::create_directories(g.out_dir);
    return (fs::path(g.out_dir) / fallback).string();
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
    } else {
        write_text_file(path, content);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-expressiveness benchmark toolkit"};
    app.require_subcommand(1);
    Globals globals;
    app.add_option("--seed", globals.seed, "Top-level seed")->each([&](const std::string&) { globals.seed_given = true; });
    app.add_option("--out-dir", globals.out_dir, "Output directory");
    app.add_option("--threads", globals.threads, "Worker threads (default: LINKEXPR_THREADS or all cores)");
    app.set_version_flag("--version", kToolVersion);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an LR-EXP style dataset");
    GenParams gp;
    std::vector<double> ratios{0.8, 0.1, 0.1};
    std::string gen_out;
    std::string perms_out;
    std::uint32_t perms_q = 0;
    gen->add_option("--count", gp.target_graph_count, "Number of graphs");
    gen->add_option("--nmin", gp.n_min, "Smallest block size");
    gen->add_option("--nmax", gp.n_max, "Largest block size");
    gen->add_option("--max-attempts", gp.max_attempts_per_graph, "Attempt budget per graph");
    gen->add_option("--pair-cap", gp.pair_cap, "Link pairs kept per graph");
    gen->add_option("--split-ratios", ratios, "train validation test fractions")->expected(3)->delimiter(',');
    gen->add_option("--out", gen_out, "Dataset path (default OUT_DIR/dataset.json)");
    gen->add_option("--perms-out", perms_out, "Also write RPC permutations (JSON lines)");
    gen->add_option("--q", perms_q, "Permuted copies per instance for --perms-out")->default_val(32);

    // mine
    auto* mine = app.add_subcommand("mine", "Mine WL-matched non-automorphic link pairs from one graph");
    std::string mine_graph;
    std::uint32_t mine_cap = 32;
    std::string mine_out;
    mine->add_option("--graph", mine_graph, "Edge-list file")->required();
    mine->add_option("--pair-cap", mine_cap, "Pairs kept");
    mine->add_option("--out", mine_out, "Output JSON (default stdout)");

    // symmetry
    auto* sym = app.add_subcommand("symmetry", "Per-graph symmetry profile");
    std::string sym_in;
    std::string sym_graph;
    std::string sym_out;
    sym->add_option("--in", sym_in, "Dataset JSON");
    sym->add_option("--graph", sym_graph, "Single edge-list file");
    sym->add_option("--out", sym_out, "Output CSV (default stdout)");

    // represent
    auto* rep = app.add_subcommand("represent", "Represent both links of every instance");
    std::string rep_in;
    std::string rep_out;
    ModelFlags rep_flags;
    rep_flags.split = "all";
    rep->add_option("--in", rep_in, "Dataset JSON")->required();
    rep->add_option("--out", rep_out, "Output JSON (default OUT_DIR/reps_<model>.json)");
    rep_flags.attach(rep, false);

    // eval-exact
    auto* ex = app.add_subcommand("eval-exact", "Exact precision of each model");
    std::string ex_in;
    std::string ex_out;
    ModelFlags ex_flags;
    ex->add_option("--in", ex_in, "Dataset JSON")->required();
    std::string ex_verdicts;
    ex->add_option("--out", ex_out, "Report CSV (default stdout table only)");
    ex->add_option("--verdicts", ex_verdicts, "Per-instance verdict CSV ('-' for stdout)");
    ex_flags.attach(ex, true);

    // eval-rpc
    auto* rpc = app.add_subcommand("eval-rpc", "Hotelling-based precision from embeddings");
    std::string rpc_in;
    std::string rpc_out;
    double alpha = 0.05;
    std::optional<double> ridge_eps;
    bool ridge = false;
    rpc->add_option("--embeddings", rpc_in, "Embeddings (JSON lines)")->required();
    rpc->add_option("--alpha", alpha, "Significance level");
    auto* ridge_opt = rpc->add_option("--ridge", ridge_eps, "Ridge-regularize singular covariances [EPS]")->expected(0, 1);
    rpc->add_option("--out", rpc_out, "Verdict CSV (default OUT_DIR/rpc_verdicts.csv)");

    // report
    auto* rpt = app.add_subcommand("report", "Precision report (CSV and text table) in OUT_DIR");
    std::string rpt_in;
    ModelFlags rpt_flags;
    rpt->add_option("--in", rpt_in, "Dataset JSON")->required();
    rpt_flags.attach(rpt, true);

    // run
    auto* run = app.add_subcommand("run", "Full pipeline from a config file");
    std::string config_path;
    run->add_option("--config", config_path, "Config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

    try {
        if (globals.threads > 0) set_worker_count(globals.threads);

        if (*gen) {
            gp.seed = globals.seed;
            if (ratios.size() != 3) throw ValidationError("--split-ratios needs three values");
            const Dataset ds = build_dataset(gp, SplitRatios{ratios[0], ratios[1], ratios[2]});
            const auto path = in_out_dir(globals, gen_out, "dataset.json");
            write_dataset(ds, path);
            if (!perms_out.empty()) write_text_file(perms_out, rpc_permutations_jsonl(ds, gp.seed, perms_q));
            std::cerr << "wrote " << ds.graphs.size() << " graphs, " << ds.instances.size() << " instances to " << path
                      << "\n";
        } else if (*mine) {
            const Graph g = load_graph_file(mine_graph);
            const auto mined = mine_test_pairs(g, mine_cap);
            nlohmann::ordered_json j;
            j["qualifying_pairs"] = mined.qualifying_total;
            j["truncated"] = mined.truncated;
            auto pairs = nlohmann::ordered_json::array();
            for (const auto& inst : mined.instances) {
                pairs.push_back({{"pair_a", {inst.pair_a.u, inst.pair_a.v}}, {"pair_b", {inst.pair_b.u, inst.pair_b.v}}});
            }
            j["pairs"] = std::move(pairs);
            emit(mine_out, j.dump(1) + "\n");
        } else if (*sym) {
            if (sym_in.empty() == sym_graph.empty()) throw ValidationError("symmetry: give exactly one of --in or --graph");
            Dataset ds;
            if (!sym_in.empty()) {
                ds = read_dataset(sym_in);
            } else {
                DatasetGraph dg;
                dg.graph = load_graph_file(sym_graph);
                ds.graphs.push_back(std::move(dg));
            }
            emit(sym_out, symmetry_profile_csv(ds));
        } else if (*rep) {
            const Dataset ds = read_dataset(rep_in);
            const auto cfg = rep_flags.configs().front();
            const auto split = parse_split(rep_flags.split);
            const auto eval = evaluate_exact(ds, cfg, split);
            emit(in_out_dir(globals, rep_out, std::string("reps_") + model_name(cfg.kind) + ".json"),
                 evaluation_to_json(eval, split));
        } else if (*ex) {
            const Dataset ds = read_dataset(ex_in);
            const auto split = parse_split(ex_flags.split);
            std::vector<ExactEvaluation> evals;
            PrecisionReport report;
            for (const auto& mc : ex_flags.configs()) {
                evals.push_back(evaluate_exact(ds, mc, split));
                report.rows.push_back(precision_row(evals.back()));
            }
            std::cout << render_table(report);
            if (!ex_out.empty()) write_text_file(ex_out, report_to_csv(report));
            if (!ex_verdicts.empty()) emit(ex_verdicts, exact_verdicts_csv(evals));
        } else if (*rpc) {
            ridge = ridge_opt->count() > 0;
            const auto batches = read_embeddings(rpc_in);
            for (const auto& b : batches) {
                if (b.q() <= b.d() + 4) {
                    std::cerr << "warning: instance " << b.instance_id << " has q=" << b.q() << " <= d+4 (d=" << b.d()
                              << "); the test has little power\n";
                }
            }
            const auto summary = rpc_precision(batches, RpcOptions{alpha, RidgeOption{ridge, ridge_eps}});
            const auto path = in_out_dir(globals, rpc_out, "rpc_verdicts.csv");
            write_text_file(path, rpc_verdicts_csv(summary.verdicts));
            std::printf("rpc precision %s over %zu instances (%zu degenerate)\n",
                        format_precision(summary.precision).c_str(), summary.verdicts.size(), summary.degenerate);
        } else if (*rpt) {
            const Dataset ds = read_dataset(rpt_in);
            const auto report = build_precision_report(ds, rpt_flags.configs(), parse_split(rpt_flags.split));
            const auto table = render_table(report);
            write_text_file(in_out_dir(globals, "", "report.csv"), report_to_csv(report));
            write_text_file(in_out_dir(globals, "", "report.txt"), table);
            std::cout << table;
        } else if (*run) {
            auto cfg = read_pipeline_config(config_path);
            if (globals.seed_given) cfg.gen.seed = globals.seed;
            const auto manifest = run_pipeline(cfg, globals.out_dir, command_line);
            std::cout << read_text_file((fs::path(globals.out_dir) / "report.txt").string());
            std::cerr << "manifest: " << manifest.outputs.size() << " outputs in " << globals.out_dir << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(ErrorKind::io);
    }
    return 0;
}

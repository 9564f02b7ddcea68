#include "linkexpr/pipeline.hpp"
#include "linkexpr/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace linkexpr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("linkexpr_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* kTinyConfig = R"({"seed": 7, "count": 5, "models": ["pure", "ncn", "seal"], "alpha": 0.05})";

}  // namespace

TEST_CASE("precision formatting") {
    CHECK(format_precision(29.0 / 30.0) == "0.967");
    CHECK(format_precision(0.0) == "0.000");
    CHECK(format_precision(1.0) == "1.000");
    CHECK(format_precision(0.125) == "0.125");
    CHECK(format_precision(0.0625) == "0.062");
}

TEST_CASE("table rendering") {
    PrecisionReport r;
    CHECK(line_count(render_table(r)) == 1);
    r.rows.push_back({"seal", 3, 3, 30, 29.0 / 30.0, false, 0});
    const auto one = render_table(r);
    CHECK(line_count(one) == 2);
    CHECK(one.find("0.967") != std::string::npos);
    r.rows.push_back({"neognn", 3, 3, 1200, 0.5, true, 2});
    const auto two = render_table(r);
    std::vector<std::string> lines;
    std::istringstream in(two);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    const auto flags_col = lines[0].find("flags");
    const auto prec_end = lines[0].find("precision") + std::string("precision").size();
    for (const auto& line : lines) {
        CHECK(line[flags_col - 1] == ' ');
        CHECK(line[flags_col] != ' ');
        CHECK(line[prec_end - 1] != ' ');
        CHECK(line[prec_end] == ' ');
    }
    CHECK(two.find("truncated;degenerate=2") != std::string::npos);
}

TEST_CASE("report csv round trip") {
    PrecisionReport r;
    CHECK(report_from_csv(report_to_csv(r)) == r);
    r.rows.push_back({"pure", 3, 3, 100, 0.0, false, 0});
    r.rows.push_back({"elph", 2, 4, 7, 1.0 / 3.0, true, 1});
    r.rows.push_back({"rpc", 0, 0, 9, 0.1 + 0.2, false, 9});
    CHECK(report_from_csv(report_to_csv(r)) == r);
    CHECK_THROWS_AS(report_from_csv("bogus\n"), ParseError);
    CHECK_THROWS_AS(report_from_csv(""), ParseError);
}

TEST_CASE("config parsing") {
    const auto c = parse_pipeline_config(kTinyConfig);
    CHECK(c.gen.seed == 7);
    CHECK(c.models.size() == 3);
    CHECK(c.split == SplitSelector::all);
    CHECK_THROWS_AS(parse_pipeline_config(R"({"seed": 1, "count": 2, "models": ["pure"], "colour": 1})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_pipeline_config(R"({"seed": 1, "count": 2})"), ValidationError);
    CHECK_THROWS_AS(parse_pipeline_config(R"({"seed": 1, "count": 2, "models": ["gcn"]})"), ValidationError);
    CHECK_THROWS_AS(parse_pipeline_config(R"({"seed": "x", "count": 2, "models": ["pure"]})"), ValidationError);
    const auto r = parse_pipeline_config(R"({"seed": 1, "count": 2, "models": ["pure"], "ridge": 0.001})");
    CHECK(r.ridge.enabled);
    CHECK(*r.ridge.epsilon == 0.001);
}

TEST_CASE("pipeline on a tiny dataset") {
    const auto dir = scratch("tiny");
    const auto cfg = parse_pipeline_config(kTinyConfig);
    const auto manifest = run_pipeline(cfg, dir.string(), "test");
    CHECK_FALSE(manifest.failed);
    const auto report = report_from_csv(read_text_file((dir / "report.csv").string()));
    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows[0].model == "pure");
    CHECK(report.rows[0].precision == 0.0);
    CHECK(report.rows[2].precision >= report.rows[1].precision);
    for (const auto& f : manifest.outputs) CHECK(fs::exists(dir / f.name));
    CHECK(fs::exists(dir / "manifest.json"));

    const auto again = scratch("tiny_again");
    run_pipeline(cfg, again.string(), "test");
    for (const char* name : {"dataset.json", "reps_pure.json", "reps_ncn.json", "reps_seal.json", "report.csv",
                             "report.txt"}) {
        CHECK(read_text_file((dir / name).string()) == read_text_file((again / name).string()));
    }
    fs::remove_all(dir);
    fs::remove_all(again);
}

TEST_CASE("missing embeddings abort the rpc stage") {
    const auto dir = scratch("missing");
    auto cfg = parse_pipeline_config(kTinyConfig);
    cfg.embeddings = (dir / "nope.jsonl").string();
    try {
        run_pipeline(cfg, dir.string());
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage() == "eval-rpc");
        CHECK(std::string(e.what()).rfind("eval-rpc: input not found", 0) == 0);
        CHECK(e.kind() == ErrorKind::io);
    }
    const auto manifest = read_text_file((dir / "manifest.json").string());
    CHECK(manifest.find("\"FAILED\"") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("pipeline with embeddings") {
    const auto dir = scratch("rpc");
    fs::create_directories(dir);
    EmbeddingBatch b;
    b.instance_id = "0";
    b.rows_a = Eigen::MatrixXd::Random(12, 2);
    b.rows_b = b.rows_a;
    b.rows_pi = Eigen::MatrixXd::Random(12, 2);
    write_text_file((dir / "emb.jsonl").string(), embedding_batch_to_json(b) + "\n");
    auto cfg = parse_pipeline_config(kTinyConfig);
    cfg.embeddings = (dir / "emb.jsonl").string();
    const auto manifest = run_pipeline(cfg, dir.string());
    CHECK(manifest.inputs.size() == 1);
    const auto report = report_from_csv(read_text_file((dir / "report.csv").string()));
    CHECK(report.rows.back().model == "rpc");
    CHECK(report.rows.back().degenerate == 1);
    fs::remove_all(dir);
}

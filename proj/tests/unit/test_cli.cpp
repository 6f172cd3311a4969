#include <doctest.h>

#include <sstream>

#include "expect_error.hpp"
#include "generators.hpp"
#include "mriprep/image.hpp"
#include "cli.hpp"

using namespace mriprep;
using testsupport::error_code;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse: split flags") {
    const auto cfg = cli::parse_args({"split", "--manifest", "m.json", "--out", "s.json", "--ratios", "0.7,0.1,0.2", "--seed", "42"});
    CHECK(cfg.command == cli::Command::Split);
    CHECK(cfg.ratios.train == 0.7);
    CHECK(cfg.ratios.val == 0.1);
    CHECK(cfg.ratios.test == 0.2);
    CHECK(cfg.seed == 42);
    CHECK(cfg.stratified);

    const auto two = cli::parse_args({"split", "--manifest", "m", "--out", "s", "--ratios", "0.8,0.2", "--no-stratify"});
    CHECK(two.ratios.train == doctest::Approx(0.8));
    CHECK(two.ratios.val == 0.0);
    CHECK(two.ratios.test == doctest::Approx(0.2));
    CHECK_FALSE(two.stratified);

    const auto pct = cli::parse_args({"split", "--manifest", "m", "--out", "s", "--ratios", "70:10:20"});
    CHECK(pct.ratios.train == doctest::Approx(0.7));
    CHECK(pct.ratios.val == doctest::Approx(0.1));
    CHECK(cli::parse_args({"split", "--manifest", "m", "--out", "s", "--ratios", "90:10"}).ratios.test == doctest::Approx(0.1));
}

TEST_CASE("parse: pipeline flags") {
    const auto cfg = cli::parse_args({"preprocess", "--manifest", "m.json", "--out", "o", "--median", "5", "--se", "7",
                                      "--clahe-tiles", "4,2", "--clahe-clip", "3.5", "--stop-after", "opening", "--resize",
                                      "256,256"});
    CHECK(cfg.pipeline.median_kernel == 5);
    CHECK(cfg.pipeline.opening_se_side == 7);
    CHECK(cfg.pipeline.clahe_tiles_x == 4);
    CHECK(cfg.pipeline.clahe_tiles_y == 2);
    CHECK(cfg.pipeline.clahe_clip == 3.5);
    CHECK(cfg.stop_after == Stage::Opening);
    CHECK(cfg.resize == std::pair{256, 256});
    CHECK(cli::parse_args({"preprocess", "--manifest", "m", "--out", "o", "--no-clahe"}).pipeline.clahe_enabled == false);
}

TEST_CASE("parse: usage errors") {
    CHECK(error_code([] { cli::parse_args({"scan", "--bogus"}); }) == ErrorCode::UsageError);
    CHECK(error_code([] { cli::parse_args({"scan", "--out", "m.json"}); }) == ErrorCode::UsageError);
    CHECK(error_code([] { cli::parse_args({"frobnicate"}); }) == ErrorCode::UsageError);
    CHECK(error_code([] { cli::parse_args({"split", "--manifest", "m", "--out", "s", "--ratios", "a,b,c"}); }) ==
          ErrorCode::UsageError);
    CHECK_THROWS_AS(cli::parse_args({"scan", "--help"}), cli::HelpRequested);

    const auto r = run_cli({"scan", "--bogus"});
    CHECK(r.code == 2);
    CHECK(r.err.starts_with("mriprep: error: UsageError:"));
    CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("config file fills flags the command line leaves out") {
    const fs::path dir = testsupport::scratch_dir("cli_config");
    write_text_file(dir / "run.cfg", "# defaults\nmedian = 5\nclahe_clip = 4\n; comment\nse = 5\n");
    const auto cfg = cli::parse_args({"preprocess", "--manifest", "m", "--out", "o", "--config", (dir / "run.cfg").string(),
                                      "--se", "7"});
    CHECK(cfg.pipeline.median_kernel == 5);
    CHECK(cfg.pipeline.clahe_clip == 4.0);
    CHECK(cfg.pipeline.opening_se_side == 7);

    write_text_file(dir / "bad.cfg", "nonsense = 1\n");
    CHECK(error_code([&] { cli::parse_args({"preprocess", "--manifest", "m", "--out", "o", "--config", (dir / "bad.cfg").string()}); }) ==
          ErrorCode::UsageError);
}

TEST_CASE("verify reports mismatched dimensions") {
    const fs::path dir = testsupport::scratch_dir("cli_verify");
    write_image(GrayImage(16, 16, 3), dir / "a.png");
    write_image(GrayImage(12, 16, 3), dir / "b.png");
    write_text_file(dir / "pairs.csv", "image_id,reference,processed\nx,a.png,b.png\n");
    const auto r = run_cli({"verify", "--pairs", (dir / "pairs.csv").string(), "--out", (dir / "q.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("mriprep: error: DimensionMismatch") != std::string::npos);

    write_text_file(dir / "pairs.csv", "image_id,reference,processed\nx,a.png,a.png\n");
    const auto ok = run_cli({"verify", "--pairs", (dir / "pairs.csv").string(), "--out", (dir / "q.csv").string()});
    CHECK(ok.code == 0);
    const auto bytes = read_file_bytes(dir / "q.csv");
    CHECK(std::string(bytes.begin(), bytes.end()) == "image_id,mse,rmse,psnr_db,ssim\nx,0,0,inf,1\n");
}

TEST_CASE("evaluate on an empty predictions file") {
    const fs::path dir = testsupport::scratch_dir("cli_eval");
    write_text_file(dir / "p.jsonl", "");
    const auto r = run_cli({"evaluate", "--predictions", (dir / "p.jsonl").string(), "--out", (dir / "m.csv").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("EmptyInput") != std::string::npos);
}

TEST_CASE("scan, split and preprocess through the CLI") {
    const fs::path dir = testsupport::scratch_dir("cli_flow");
    testsupport::Rng rng(1);
    for (const char* cls : {"glioma", "pituitary"}) {
        for (int i = 0; i < 3; ++i) write_image(testsupport::random_image(rng, 24, 24), dir / "corpus" / cls / (std::to_string(i) + ".png"));
    }
    REQUIRE(run_cli({"scan", "--root", (dir / "corpus").string(), "--out", (dir / "m.json").string()}).code == 0);
    REQUIRE(run_cli({"split", "--manifest", (dir / "m.json").string(), "--out", (dir / "s.json").string(), "--ratios",
                     "0.34,0,0.66"}).code == 0);
    const auto r = run_cli({"preprocess", "--manifest", (dir / "m.json").string(), "--out", (dir / "pp").string(),
                            "--clahe-tiles", "2,2"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "pp" / "processed" / "glioma" / "0.png"));
    CHECK(fs::exists(dir / "pp" / "pairs.csv"));
    CHECK(fs::exists(dir / "pp" / "trace.csv"));
    CHECK(run_cli({"verify", "--pairs", (dir / "pp" / "pairs.csv").string(), "--out", (dir / "q.csv").string()}).code == 0);
}

TEST_SUITE_END();

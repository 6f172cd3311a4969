#include <doctest.h>

#include <algorithm>

#include "expect_error.hpp"
#include "generators.hpp"
#include "mriprep/report.hpp"

using namespace mriprep;
using testsupport::error_code;

TEST_SUITE_BEGIN("report");

namespace {

// Published transfer-learning results, fractions instead of percent.
std::vector<RunSummary> published_runs() {
    return {
        {"VGG19", 0.9663, 0.21, 0.9593, 0.21, 0.9522, 0.25},
        {"VGG16", 0.9621, 0.20, 0.9695, 0.12, 0.9612, 0.20},
        {"DenseNet 121", 0.9741, 0.19, 0.9723, 0.28, 0.9721, 0.31},
        {"ResNet50", 0.9998, 0.23, 0.9954, 0.32, 0.9954, 0.37},
        {"YOLO V4", 0.9123, 0.39, 0.9121, 0.392, 0.9121, 0.94},
    };
}

std::vector<EpochLogEntry> synthetic_logs(const std::string& model, int epochs, testsupport::Rng& rng) {
    std::vector<EpochLogEntry> out;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int e = 1; e <= epochs; ++e) out.push_back({model, e, u(rng), u(rng), 2.0 * u(rng), 2.0 * u(rng)});
    return out;
}

}  // namespace

TEST_CASE("epoch log parsing and schema errors") {
    const std::string text =
        "{\"model\":\"a\",\"epoch\":1,\"train_acc\":0.5,\"val_acc\":0.4,\"train_loss\":1.0,\"val_loss\":1.1}\n"
        "{\"model\":\"b\",\"epoch\":1,\"train_acc\":0.6,\"val_acc\":0.5,\"train_loss\":0.9,\"val_loss\":1.0}\n"
        "{\"model\":\"a\",\"epoch\":2,\"train_acc\":0.7,\"val_acc\":0.6,\"train_loss\":0.8,\"val_loss\":0.9}\n";
    const auto logs = parse_epoch_logs(text);
    REQUIRE(logs.size() == 3);
    CHECK(logs[0].model == "a");
    CHECK(logs[1].model == "a");
    CHECK(logs[1].epoch == 2);
    CHECK(logs[2].model == "b");
    CHECK(parse_epoch_logs(epoch_logs_to_jsonl(logs)) == logs);

    const auto msg = [](const std::string& t) { return testsupport::error_message([&] { parse_epoch_logs(t); }); };
    const std::string line1 = text.substr(0, text.find('\n') + 1);
    CHECK(msg(line1 + "{\"model\":\"a\",\"epoch\":2}\n").find("line 2") != std::string::npos);
    CHECK(msg(line1 + "\n[1,2]\n").find("line 3") != std::string::npos);
    CHECK(msg("{\"model\":\"a\",\"epoch\":1,\"train_acc\":1.5,\"val_acc\":0.4,\"train_loss\":1,\"val_loss\":1}")
              .find("SchemaViolation") != std::string::npos);
    CHECK(error_code([&] { parse_epoch_logs(line1 + line1); }) == ErrorCode::NonMonotoneEpochs);
}

TEST_CASE("summary parsing round trip") {
    const auto runs = published_runs();
    CHECK(parse_summaries(summaries_to_jsonl(runs)) == runs);
    CHECK(error_code([] { parse_summaries("{\"model\":\"m\"}"); }) == ErrorCode::SchemaViolation);
}

TEST_CASE("comparison table ranks the published runs") {
    const ComparisonTable t = comparison_table(published_runs());
    CHECK(t.best_model == "ResNet50");
    const std::vector<std::string> order{"ResNet50", "DenseNet 121", "VGG16", "VGG19", "YOLO V4"};
    REQUIRE(t.ranked.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(t.ranked[i].model == order[i]);
    CHECK(t.data.header ==
          std::vector<std::string>{"Model", "Train_Acc", "Train_Loss", "Val_Acc", "Val_Loss", "Test_Acc", "Test_Loss", "Best"});
    CHECK(t.display.rows[0] == std::vector<std::string>{"ResNet50", "99.98", "0.230", "99.54", "0.320", "99.54", "0.370", "*"});
    CHECK(parse_real(t.data.rows[4][5]) == 0.9121);
    CHECK(t.display.to_markdown().find("| ResNet50 |") != std::string::npos);
}

TEST_CASE("comparison ties and errors") {
    std::vector<RunSummary> runs{{"b", 0.9, 0.1, 0.9, 0.1, 0.8, 0.5}, {"a", 0.9, 0.1, 0.9, 0.1, 0.8, 0.5},
                                 {"c", 0.9, 0.1, 0.9, 0.1, 0.8, 0.4}};
    const auto t = comparison_table(runs);
    CHECK(t.ranked[0].model == "c");
    CHECK(t.ranked[1].model == "a");
    CHECK(t.ranked[2].model == "b");
    runs.push_back(runs[0]);
    CHECK(error_code([&] { comparison_table(runs); }) == ErrorCode::DuplicateModel);
    CHECK(error_code([] { comparison_table({}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("comparison order is independent of input order") {
    testsupport::Rng rng(3);
    auto runs = published_runs();
    const auto expected = comparison_table(runs).data.to_csv();
    for (int i = 0; i < 30; ++i) {
        std::shuffle(runs.begin(), runs.end(), rng);
        REQUIRE(comparison_table(runs).data.to_csv() == expected);
    }
}

TEST_CASE("curves: axis span and CSV twin") {
    testsupport::Rng rng(4);
    auto logs = synthetic_logs("ResNet50", 100, rng);
    const auto more = synthetic_logs("VGG16", 40, rng);
    logs.insert(logs.end(), more.begin(), more.end());
    for (CurveKind kind : {CurveKind::Accuracy, CurveKind::Loss}) {
        const CurveDocument doc = render_curves(logs, kind);
        CHECK(doc.svg.find("<g id=\"x-axis\" data-min=\"1\" data-max=\"100\">") != std::string::npos);
        CHECK(doc.svg.find("data-series=\"ResNet50 train\"") != std::string::npos);
        const auto points = parse_curve_csv(doc.csv);
        REQUIRE(points.size() == logs.size());
        for (std::size_t i = 0; i < logs.size(); ++i) {
            CHECK(points[i].model == logs[i].model);
            CHECK(points[i].epoch == logs[i].epoch);
            CHECK(points[i].train == (kind == CurveKind::Accuracy ? logs[i].train_acc : logs[i].train_loss));
            CHECK(points[i].val == (kind == CurveKind::Accuracy ? logs[i].val_acc : logs[i].val_loss));
        }
    }
    CHECK(render_curves(logs, CurveKind::Loss).csv.starts_with("model,epoch,train_loss,val_loss\n"));
}

TEST_CASE("curves: single entry and empty input") {
    const std::vector<EpochLogEntry> one{{"m", 1, 0.5, 0.5, 1.0, 1.0}};
    const CurveDocument doc = render_curves(one, CurveKind::Accuracy);
    CHECK(doc.svg.find("<svg") != std::string::npos);
    CHECK(parse_curve_csv(doc.csv).size() == 1);
    CHECK(error_code([] { render_curves({}, CurveKind::Accuracy); }) == ErrorCode::EmptyInput);
}

TEST_CASE("bundle: perfect predictions") {
    ReportInputs in;
    in.confusion = ConfusionMatrix({"a", "b", "c"}, {{5, 0, 0}, {0, 7, 0}, {0, 0, 3}});
    in.model_name = "m";
    const ReportBundle b = evaluation_report(in);
    CHECK(b.count("comparison.csv") == 0);
    const std::string md = b.at("statistics.md");
    CHECK(md.find("| m | 100.00 | 0.00 | 0.00 | 0.00 | 100.00 | 100.00 |") != std::string::npos);
    CHECK(error_code([] { evaluation_report(ReportInputs{}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("bundle: statistics row re-derives from the aggregate") {
    ReportInputs in;
    in.confusion = ConfusionMatrix({"neg", "pos"}, {{50, 10}, {5, 35}});
    in.summaries = published_runs();
    testsupport::Rng rng(5);
    in.epoch_logs = synthetic_logs("ResNet50", 12, rng);
    const ReportBundle b = evaluation_report(in);
    for (const char* f : {"comparison.csv", "comparison.md", "comparison.txt", "confusion.csv", "stats.csv", "stats.txt",
                          "statistics.csv", "statistics.md", "accuracy_curve.svg", "accuracy_curve.csv", "loss_curve.svg",
                          "loss_curve.csv"}) {
        CHECK_MESSAGE(b.count(f) == 1, f);
    }
    const AggregateStats a = aggregate(*in.confusion);
    const std::string csv = b.at("statistics.csv");
    const std::string row = csv.substr(csv.find('\n') + 1);
    const auto cells = csv_split(row.substr(0, row.find('\n')));
    REQUIRE(cells.size() == 9);
    CHECK(cells[0] == "ResNet50");
    const std::vector<double> expected{a.accuracy, a.macro_fpr, a.macro_fnr, a.macro_fdr, a.kappa, a.mcc, a.mae, a.rmse};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(parse_real(cells[i + 1]) - expected[i]) <= 1e-12);
    CHECK(b.at("confusion.csv").starts_with("true\\pred,neg,pos\n"));

    const auto dir = testsupport::scratch_dir("bundle");
    write_bundle(b, dir);
    CHECK(read_file_bytes(dir / "statistics.csv").size() == csv.size());
}

TEST_SUITE_END();

#include "mriprep/error.hpp"
#include "mriprep/image.hpp"
#include "mriprep/report.hpp"

namespace mriprep {

Table statistics_row(const std::string& model, const AggregateStats& agg, bool percent) {
    Table t;
    auto pct = [percent](double v) { return percent ? format_percent(v) : format_real(v); };
    auto raw = [percent](double v) { return percent ? format_fixed(v, 4) : format_real(v); };
    if (percent) {
        t.header = {"Model", "Accuracy (%)", "FPR (%)", "FNR (%)", "FDR (%)", "KC (%)", "MCC (%)", "MAE", "RMSE"};
    } else {
        t.header = {"model", "accuracy", "fpr", "fnr", "fdr", "kappa", "mcc", "mae", "rmse"};
    }
    t.rows.push_back({model, pct(agg.accuracy), pct(agg.macro_fpr), pct(agg.macro_fnr), pct(agg.macro_fdr),
                      pct(agg.kappa), pct(agg.mcc), raw(agg.mae), raw(agg.rmse)});
    return t;
}

namespace {

std::string confusion_csv(const ConfusionMatrix& cm) {
    Table t;
    t.header = {"true\\pred"};
    for (const auto& l : cm.labels()) t.header.push_back(l);
    for (std::size_t i = 0; i < cm.classes(); ++i) {
        std::vector<std::string> row = {cm.labels()[i]};
        for (std::size_t j = 0; j < cm.classes(); ++j) row.push_back(std::to_string(cm.at(i, j)));
        t.rows.push_back(std::move(row));
    }
    return t.to_csv();
}

}  // namespace

ReportBundle evaluation_report(const ReportInputs& in) {
    ReportBundle bundle;
    std::string model = in.model_name;

    if (!in.summaries.empty()) {
        const ComparisonTable cmp = comparison_table(in.summaries);
        bundle["comparison.csv"] = cmp.data.to_csv();
        bundle["comparison.md"] = cmp.display.to_markdown();
        bundle["comparison.txt"] = cmp.display.to_text();
        if (model.empty()) model = cmp.best_model;
    }
    if (model.empty()) model = "model";

    if (in.confusion) {
        const StatsReport stats = stats_report(*in.confusion, in.prob_error);
        const AggregateStats agg = aggregate(*in.confusion);
        bundle["confusion.csv"] = confusion_csv(*in.confusion);
        bundle["stats.csv"] = stats.to_csv();
        bundle["stats.txt"] = stats.to_text();
        bundle["statistics.csv"] = statistics_row(model, agg, false).to_csv();
        bundle["statistics.md"] = statistics_row(model, agg, true).to_markdown();
    }

    if (!in.epoch_logs.empty()) {
        const CurveDocument accuracy = render_curves(in.epoch_logs, CurveKind::Accuracy);
        const CurveDocument loss = render_curves(in.epoch_logs, CurveKind::Loss);
        bundle["accuracy_curve.svg"] = accuracy.svg;
        bundle["accuracy_curve.csv"] = accuracy.csv;
        bundle["loss_curve.svg"] = loss.svg;
        bundle["loss_curve.csv"] = loss.csv;
    }

    if (bundle.empty()) fail(ErrorCode::EmptyInput, "nothing to report: no summaries, predictions or epoch logs");
    return bundle;
}

void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir) {
    for (const auto& [name, content] : bundle) write_text_file(dir / name, content);
}

}  // namespace mriprep

#include "mriprep/metrics.hpp"

namespace mriprep {

std::string StatsReport::to_text() const { return per_class.to_text() + "\n" + overall.to_text(); }

StatsReport stats_report(const ConfusionMatrix& cm, const std::optional<ProbabilityError>& prob_error) {
    const AggregateStats agg = aggregate(cm);
    StatsReport report;
    report.long_form.header = {"scope", "label", "metric", "value"};
    report.per_class.header = {"class", "precision(%)", "recall(%)", "f1(%)", "support"};
    report.overall.header = {"metric", "value"};

    auto row = [&report](const std::string& scope, const std::string& label, const std::string& metric, double v) {
        report.long_form.rows.push_back({scope, label, metric, format_real(v)});
    };

    for (std::size_t c = 0; c < cm.classes(); ++c) {
        const auto& label = cm.labels()[c];
        const PerClassCounts pc = per_class_counts(cm, c);
        const ClassStats s = class_stats(pc);
        row("class", label, "tp", static_cast<double>(pc.tp));
        row("class", label, "fp", static_cast<double>(pc.fp));
        row("class", label, "fn", static_cast<double>(pc.fn));
        row("class", label, "tn", static_cast<double>(pc.tn));
        row("class", label, "precision", s.precision);
        row("class", label, "recall", s.recall);
        row("class", label, "specificity", s.specificity);
        row("class", label, "f1", s.f1);
        row("class", label, "fpr", s.fpr);
        row("class", label, "fnr", s.fnr);
        row("class", label, "fdr", s.fdr);
        report.long_form.rows.push_back({"class", label, "degenerate", std::to_string(s.degenerate)});
        report.per_class.rows.push_back({label, format_percent(s.precision), format_percent(s.recall), format_percent(s.f1),
                                         std::to_string(pc.tp + pc.fn)});
    }

    row("macro", "", "precision", agg.macro_precision);
    row("macro", "", "recall", agg.macro_recall);
    row("macro", "", "f1", agg.macro_f1);
    row("macro", "", "specificity", agg.macro_specificity);
    row("macro", "", "fpr", agg.macro_fpr);
    row("macro", "", "fnr", agg.macro_fnr);
    row("macro", "", "fdr", agg.macro_fdr);
    row("micro", "", "precision", agg.micro_precision);
    row("micro", "", "recall", agg.micro_recall);
    row("micro", "", "f1", agg.micro_f1);
    row("overall", "", "accuracy", agg.accuracy);
    row("overall", "", "kappa", agg.kappa);
    row("overall", "", "mcc", agg.mcc);
    row("overall", "", "mae", agg.mae);
    row("overall", "", "rmse", agg.rmse);
    if (prob_error) {
        row("overall", "", "prob_mae", prob_error->mae);
        row("overall", "", "prob_rmse", prob_error->rmse);
    }
    row("overall", "", "n", static_cast<double>(cm.total()));

    const std::string n = std::to_string(cm.total());
    report.per_class.rows.push_back({"macro avg", format_percent(agg.macro_precision), format_percent(agg.macro_recall),
                                     format_percent(agg.macro_f1), n});
    report.per_class.rows.push_back({"micro avg", format_percent(agg.micro_precision), format_percent(agg.micro_recall),
                                     format_percent(agg.micro_f1), n});

    report.overall.rows = {
        {"accuracy(%)", format_percent(agg.accuracy)},
        {"kappa(%)", format_percent(agg.kappa)},
        {"mcc(%)", format_percent(agg.mcc)},
        {"macro specificity(%)", format_percent(agg.macro_specificity)},
        {"macro fpr(%)", format_percent(agg.macro_fpr)},
        {"macro fnr(%)", format_percent(agg.macro_fnr)},
        {"macro fdr(%)", format_percent(agg.macro_fdr)},
        {"label mae", format_fixed(agg.mae, 4)},
        {"label rmse", format_fixed(agg.rmse, 4)},
    };
    if (prob_error) {
        report.overall.rows.push_back({"prob mae", format_fixed(prob_error->mae, 4)});
        report.overall.rows.push_back({"prob rmse", format_fixed(prob_error->rmse, 4)});
    }
    return report;
}

}  // namespace mriprep

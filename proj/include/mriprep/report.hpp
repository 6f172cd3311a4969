#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mriprep/format.hpp"
#include "mriprep/metrics.hpp"

namespace mriprep {

struct EpochLogEntry {
    std::string model;
    int epoch = 1;
    double train_acc = 0;
    double val_acc = 0;
    double train_loss = 0;
    double val_loss = 0;

    friend bool operator==(const EpochLogEntry&, const EpochLogEntry&) = default;
};

struct RunSummary {
    std::string model;
    double train_acc = 0;
    double train_loss = 0;
    double val_acc = 0;
    double val_loss = 0;
    double test_acc = 0;
    double test_loss = 0;

    friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

/// Entries grouped by model in first-appearance order, file order kept within a
/// model. Throws SchemaViolation (with line number) or NonMonotoneEpochs.
std::vector<EpochLogEntry> parse_epoch_logs(std::string_view jsonl);
std::vector<EpochLogEntry> load_epoch_logs(const std::filesystem::path& file);
std::string epoch_logs_to_jsonl(const std::vector<EpochLogEntry>& entries);

std::vector<RunSummary> parse_summaries(std::string_view jsonl);
std::vector<RunSummary> load_summaries(const std::filesystem::path& file);
std::string summaries_to_jsonl(const std::vector<RunSummary>& summaries);

/// Descending test accuracy, then ascending test loss, then model name.
bool ranks_before(const RunSummary& a, const RunSummary& b) noexcept;

struct ComparisonTable {
    std::vector<RunSummary> ranked;
    std::string best_model;
    Table data;     ///< full-precision fractions
    Table display;  ///< accuracies in percent, two decimals
};

/// Throws EmptyInput or DuplicateModel.
ComparisonTable comparison_table(const std::vector<RunSummary>& summaries);

enum class CurveKind { Accuracy, Loss };

struct CurveDocument {
    std::string svg;
    std::string csv;  ///< model,epoch,train_<m>,val_<m>
};

/// Throws EmptyInput.
CurveDocument render_curves(const std::vector<EpochLogEntry>& entries, CurveKind kind);

struct CurvePoint {
    std::string model;
    int epoch;
    double train;
    double val;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};
std::vector<CurvePoint> parse_curve_csv(std::string_view csv);

struct ReportInputs {
    std::optional<ConfusionMatrix> confusion;
    std::optional<ProbabilityError> prob_error;
    std::vector<RunSummary> summaries;
    std::vector<EpochLogEntry> epoch_logs;
    /// Row label for the statistics table; defaults to the best-ranked model.
    std::string model_name;
};

/// Output file name -> content.
using ReportBundle = std::map<std::string, std::string>;

/// Builds every document the inputs allow: comparison table, per-class and
/// aggregate statistics, the best-model statistics row, and curves.
ReportBundle evaluation_report(const ReportInputs& inputs);

/// Writes each bundle entry under `dir`.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

/// Best-model statistics row: accuracy, FPR, FNR, FDR, KC, MCC, MAE, RMSE.
Table statistics_row(const std::string& model, const AggregateStats& agg, bool percent);

}  // namespace mriprep

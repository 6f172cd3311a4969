#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mriprep/format.hpp"

namespace mriprep {

struct PredictionRecord {
    std::string sample_id;
    std::string true_label;
    std::string pred_label;
    std::optional<std::vector<double>> probs;
};

/// Rows are true classes, columns predicted classes.
class ConfusionMatrix {
public:
    /// Throws TooFewClasses when fewer than two labels are given.
    explicit ConfusionMatrix(std::vector<std::string> labels);
    ConfusionMatrix(std::vector<std::string> labels, const std::vector<std::vector<std::uint64_t>>& counts);

    std::size_t classes() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::uint64_t at(std::size_t truth, std::size_t pred) const noexcept { return counts_[truth * labels_.size() + pred]; }
    void add(std::size_t truth, std::size_t pred, std::uint64_t count = 1);
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t trace() const noexcept;
    std::uint64_t row_sum(std::size_t c) const noexcept;
    std::uint64_t col_sum(std::size_t c) const noexcept;

    /// Element-wise sum; labels must agree.
    ConfusionMatrix& merge(const ConfusionMatrix& other);

    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

struct PerClassCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    friend bool operator==(const PerClassCounts&, const PerClassCounts&) = default;
};

/// Bits set in ClassStats::degenerate when a ratio hit 0/0 and was reported as 0.
enum DegenerateRatio : unsigned {
    kDegeneratePrecision = 1u << 0,
    kDegenerateRecall = 1u << 1,
    kDegenerateSpecificity = 1u << 2,
    kDegenerateF1 = 1u << 3,
};

struct ClassStats {
    double precision = 0;
    double recall = 0;
    double specificity = 0;
    double f1 = 0;
    double fpr = 0;
    double fnr = 0;
    double fdr = 0;
    unsigned degenerate = 0;
};

struct ProbabilityError {
    double mae;
    double rmse;
};

struct AggregateStats {
    double accuracy = 0;
    double macro_precision = 0;
    double macro_recall = 0;
    double macro_f1 = 0;
    double macro_specificity = 0;
    double macro_fpr = 0;
    double macro_fnr = 0;
    double macro_fdr = 0;
    double micro_precision = 0;
    double micro_recall = 0;
    double micro_f1 = 0;
    double kappa = 0;
    double mcc = 0;
    /// Error between true and predicted class indices (manifest order).
    double mae = 0;
    double rmse = 0;
    /// One-hot deviation of the predicted distribution, when records carry probs.
    std::optional<ProbabilityError> prob_error;
};

/// Throws EmptyInput, UnknownLabel (naming the record), TooFewClasses.
ConfusionMatrix build_confusion(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels);

PerClassCounts per_class_counts(const ConfusionMatrix& cm, std::size_t c);
ClassStats class_stats(const PerClassCounts& counts);

/// Throws EmptyMatrix when n == 0.
AggregateStats aggregate(const ConfusionMatrix& cm);

/// mean |t - p| and sqrt(mean (t - p)^2) over class indices.
std::pair<double, double> label_error(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels);

/// Mean absolute and root-mean-square deviation of probs from the one-hot truth,
/// averaged over records and classes. nullopt when any record lacks probs.
std::optional<ProbabilityError> probability_error(const std::vector<PredictionRecord>& records,
                                                  const std::vector<std::string>& labels);

/// Confusion matrix plus every statistic for a set of records.
struct Evaluation {
    ConfusionMatrix confusion;
    std::vector<ClassStats> per_class;
    AggregateStats aggregate;
};
Evaluation evaluate(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels);

struct StatsReport {
    Table long_form;  ///< scope,label,metric,value with full-precision fractions
    Table per_class;  ///< precision/recall/f1 per class plus macro and micro rows, in percent
    Table overall;    ///< accuracy, kappa, mcc, label error

    std::string to_csv() const { return long_form.to_csv(); }
    std::string to_text() const;
};
StatsReport stats_report(const ConfusionMatrix& cm, const std::optional<ProbabilityError>& prob_error = std::nullopt);

/// JSON Lines: {"sample_id","true_label","pred_label","probs"?}. Blank lines are skipped.
std::vector<PredictionRecord> parse_predictions(std::string_view jsonl);
std::string predictions_to_jsonl(const std::vector<PredictionRecord>& records);

/// Sorted distinct labels seen in the records (true and predicted).
std::vector<std::string> labels_from_records(const std::vector<PredictionRecord>& records);

}  // namespace mriprep

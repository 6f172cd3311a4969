#include <cmath>
#include <string>
#include <unordered_map>

#include "mriprep/error.hpp"
#include "mriprep/metrics.hpp"

namespace mriprep {

namespace {

// 0/0 is reported as 0 and flagged.
double ratio(std::uint64_t num, std::uint64_t den, unsigned flag, unsigned& degenerate) {
    if (den == 0) {
        degenerate |= flag;
        return 0.0;
    }
    return static_cast<double>(num) / static_cast<double>(den);
}

std::vector<std::size_t> label_indices(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels,
                                       bool truth) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
    std::vector<std::size_t> out;
    out.reserve(records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& label = truth ? records[r].true_label : records[r].pred_label;
        const auto it = index.find(label);
        if (it == index.end()) fail(ErrorCode::UnknownLabel, "\"" + label + "\" in record " + std::to_string(r + 1));
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

ClassStats class_stats(const PerClassCounts& c) {
    ClassStats s;
    s.precision = ratio(c.tp, c.tp + c.fp, kDegeneratePrecision, s.degenerate);
    s.recall = ratio(c.tp, c.tp + c.fn, kDegenerateRecall, s.degenerate);
    s.specificity = ratio(c.tn, c.tn + c.fp, kDegenerateSpecificity, s.degenerate);
    unsigned ignored = 0;
    s.fpr = ratio(c.fp, c.fp + c.tn, 0, ignored);
    s.fnr = ratio(c.fn, c.fn + c.tp, 0, ignored);
    s.fdr = ratio(c.fp, c.fp + c.tp, 0, ignored);
    if (s.precision + s.recall > 0.0) {
        s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    } else {
        s.degenerate |= kDegenerateF1;
    }
    return s;
}

AggregateStats aggregate(const ConfusionMatrix& cm) {
    const std::uint64_t n = cm.total();
    if (n == 0) fail(ErrorCode::EmptyMatrix, "confusion matrix has no observations");
    const std::size_t k = cm.classes();

    AggregateStats a;
    const std::uint64_t trace = cm.trace();
    a.accuracy = static_cast<double>(trace) / static_cast<double>(n);

    std::uint64_t tp = 0, fp = 0, fn = 0;
    std::uint64_t marginal_product = 0, row_sq = 0, col_sq = 0;
    for (std::size_t c = 0; c < k; ++c) {
        const PerClassCounts pc = per_class_counts(cm, c);
        const ClassStats s = class_stats(pc);
        a.macro_precision += s.precision;
        a.macro_recall += s.recall;
        a.macro_f1 += s.f1;
        a.macro_specificity += s.specificity;
        a.macro_fpr += s.fpr;
        a.macro_fnr += s.fnr;
        a.macro_fdr += s.fdr;
        tp += pc.tp;
        fp += pc.fp;
        fn += pc.fn;
        const std::uint64_t r = cm.row_sum(c);
        const std::uint64_t col = cm.col_sum(c);
        marginal_product += r * col;
        row_sq += r * r;
        col_sq += col * col;
    }
    const double kd = static_cast<double>(k);
    a.macro_precision /= kd;
    a.macro_recall /= kd;
    a.macro_f1 /= kd;
    a.macro_specificity /= kd;
    a.macro_fpr /= kd;
    a.macro_fnr /= kd;
    a.macro_fdr /= kd;

    unsigned ignored = 0;
    a.micro_precision = ratio(tp, tp + fp, 0, ignored);
    a.micro_recall = ratio(tp, tp + fn, 0, ignored);
    a.micro_f1 = a.micro_precision + a.micro_recall > 0.0
                     ? 2.0 * a.micro_precision * a.micro_recall / (a.micro_precision + a.micro_recall)
                     : 0.0;

    // Both coefficients share the numerator n * trace - sum_k rowsum_k * colsum_k.
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    const double agreement = static_cast<double>(n) * static_cast<double>(trace) - static_cast<double>(marginal_product);
    if (marginal_product == n * n) {
        a.kappa = trace == n ? 1.0 : 0.0;
    } else {
        a.kappa = agreement / (nn - static_cast<double>(marginal_product));
    }
    const double mcc_den = (nn - static_cast<double>(col_sq)) * (nn - static_cast<double>(row_sq));
    a.mcc = mcc_den > 0.0 ? agreement / std::sqrt(mcc_den) : 0.0;

    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
            abs_sum += d * static_cast<double>(cm.at(i, j));
            sq_sum += d * d * static_cast<double>(cm.at(i, j));
        }
    }
    a.mae = abs_sum / static_cast<double>(n);
    a.rmse = std::sqrt(sq_sum / static_cast<double>(n));
    return a;
}

std::pair<double, double> label_error(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels) {
    if (records.empty()) fail(ErrorCode::EmptyInput, "no prediction records");
    const auto truth = label_indices(records, labels, true);
    const auto pred = label_indices(records, labels, false);
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const double d = static_cast<double>(truth[i]) - static_cast<double>(pred[i]);
        abs_sum += std::abs(d);
        sq_sum += d * d;
    }
    const double n = static_cast<double>(records.size());
    return {abs_sum / n, std::sqrt(sq_sum / n)};
}

std::optional<ProbabilityError> probability_error(const std::vector<PredictionRecord>& records,
                                                  const std::vector<std::string>& labels) {
    if (records.empty()) fail(ErrorCode::EmptyInput, "no prediction records");
    for (const auto& r : records) {
        if (!r.probs) return std::nullopt;
    }
    const auto truth = label_indices(records, labels, true);
    double abs_sum = 0.0;
    double sq_sum = 0.0;
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& probs = *records[r].probs;
        if (probs.size() != labels.size()) {
            fail(ErrorCode::SchemaViolation, "record " + std::to_string(r + 1) + " has " + std::to_string(probs.size()) +
                                                 " probabilities for " + std::to_string(labels.size()) + " classes");
        }
        for (std::size_t c = 0; c < probs.size(); ++c) {
            const double d = probs[c] - (c == truth[r] ? 1.0 : 0.0);
            abs_sum += std::abs(d);
            sq_sum += d * d;
        }
    }
    const double cells = static_cast<double>(records.size() * labels.size());
    return ProbabilityError{abs_sum / cells, std::sqrt(sq_sum / cells)};
}

Evaluation evaluate(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels) {
    Evaluation ev{build_confusion(records, labels), {}, {}};
    for (std::size_t c = 0; c < ev.confusion.classes(); ++c) ev.per_class.push_back(class_stats(per_class_counts(ev.confusion, c)));
    ev.aggregate = aggregate(ev.confusion);
    ev.aggregate.prob_error = probability_error(records, labels);
    return ev;
}

}  // namespace mriprep

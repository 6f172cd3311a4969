#include <algorithm>
#include <string>
#include <unordered_map>

#include "mriprep/error.hpp"
#include "mriprep/metrics.hpp"

namespace mriprep {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.size() < 2) fail(ErrorCode::TooFewClasses, "a confusion matrix needs at least two classes");
    counts_.assign(labels_.size() * labels_.size(), 0);
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> labels, const std::vector<std::vector<std::uint64_t>>& counts)
    : ConfusionMatrix(std::move(labels)) {
    if (counts.size() != labels_.size()) fail(ErrorCode::SchemaViolation, "count matrix row count differs from label count");
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size() != labels_.size()) fail(ErrorCode::SchemaViolation, "count matrix is not square");
        for (std::size_t j = 0; j < counts[i].size(); ++j) add(i, j, counts[i][j]);
    }
}

void ConfusionMatrix::add(std::size_t truth, std::size_t pred, std::uint64_t count) {
    if (truth >= labels_.size() || pred >= labels_.size()) fail(ErrorCode::IndexOutOfRange, "class index out of range");
    counts_[truth * labels_.size() + pred] += count;
    total_ += count;
}

std::uint64_t ConfusionMatrix::trace() const noexcept {
    std::uint64_t t = 0;
    for (std::size_t c = 0; c < labels_.size(); ++c) t += at(c, c);
    return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t c) const noexcept {
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < labels_.size(); ++j) s += at(c, j);
    return s;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t c) const noexcept {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) s += at(i, c);
    return s;
}

ConfusionMatrix& ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.labels_ != labels_) fail(ErrorCode::SchemaViolation, "cannot merge confusion matrices with different labels");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
    return *this;
}

ConfusionMatrix build_confusion(const std::vector<PredictionRecord>& records, const std::vector<std::string>& labels) {
    if (records.empty()) fail(ErrorCode::EmptyInput, "no prediction records");
    ConfusionMatrix cm(labels);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& rec = records[r];
        auto lookup = [&](const std::string& label) {
            const auto it = index.find(label);
            if (it == index.end()) {
                fail(ErrorCode::UnknownLabel, "\"" + label + "\" in record " + std::to_string(r + 1) + " (sample '" +
                                                  rec.sample_id + "')");
            }
            return it->second;
        };
        cm.add(lookup(rec.true_label), lookup(rec.pred_label));
    }
    return cm;
}

PerClassCounts per_class_counts(const ConfusionMatrix& cm, std::size_t c) {
    if (c >= cm.classes()) fail(ErrorCode::IndexOutOfRange, "class index " + std::to_string(c) + " out of range");
    PerClassCounts out;
    out.tp = cm.at(c, c);
    out.fp = cm.col_sum(c) - out.tp;
    out.fn = cm.row_sum(c) - out.tp;
    out.tn = cm.total() - out.tp - out.fp - out.fn;
    return out;
}

std::vector<std::string> labels_from_records(const std::vector<PredictionRecord>& records) {
    std::vector<std::string> labels;
    for (const auto& r : records) {
        labels.push_back(r.true_label);
        labels.push_back(r.pred_label);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace mriprep

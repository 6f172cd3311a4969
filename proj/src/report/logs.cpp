#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mriprep/error.hpp"
#include "mriprep/image.hpp"
#include "mriprep/report.hpp"

using nlohmann::json;

namespace mriprep {

namespace {

class LineReader {
public:
    LineReader(std::string_view what, std::size_t line, const json& obj) : what_(what), line_(line), obj_(obj) {}

    [[noreturn]] void bad(const std::string& why) const {
        fail(ErrorCode::SchemaViolation, std::string(what_) + " line " + std::to_string(line_) + ": " + why);
    }

    std::string text(const char* key) const {
        if (!obj_.contains(key) || !obj_[key].is_string()) bad(std::string("missing string field \"") + key + "\"");
        return obj_[key].get<std::string>();
    }

    double number(const char* key) const {
        if (!obj_.contains(key) || !obj_[key].is_number()) bad(std::string("missing numeric field \"") + key + "\"");
        const double v = obj_[key].get<double>();
        if (!std::isfinite(v)) bad(std::string("non-finite \"") + key + "\"");
        return v;
    }

    double fraction(const char* key) const {
        const double v = number(key);
        if (v < 0.0 || v > 1.0) bad(std::string("\"") + key + "\" must lie in [0, 1]");
        return v;
    }

    double loss(const char* key) const {
        const double v = number(key);
        if (v < 0.0) bad(std::string("\"") + key + "\" must be >= 0");
        return v;
    }

    int epoch() const {
        if (!obj_.contains("epoch") || !obj_["epoch"].is_number_integer()) bad("missing integer field \"epoch\"");
        const auto v = obj_["epoch"].get<long long>();
        if (v < 1 || v > 100000000) bad("\"epoch\" must be >= 1");
        return static_cast<int>(v);
    }

private:
    std::string_view what_;
    std::size_t line_;
    const json& obj_;
};

template <typename Fn>
void for_each_object(std::string_view jsonl, std::string_view what, Fn&& fn) {
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            fail(ErrorCode::SchemaViolation, std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
        }
        LineReader reader(what, line_no, obj);
        if (!obj.is_object()) reader.bad("expected an object");
        fn(reader, line_no);
    }
}

std::string read_text(const std::filesystem::path& file) {
    const auto bytes = read_file_bytes(file);
    return std::string(bytes.begin(), bytes.end());
}

}  // namespace

std::vector<EpochLogEntry> parse_epoch_logs(std::string_view jsonl) {
    std::vector<EpochLogEntry> entries;
    std::vector<std::size_t> lines;
    for_each_object(jsonl, "epoch log", [&](const LineReader& r, std::size_t line_no) {
        EpochLogEntry e;
        e.model = r.text("model");
        e.epoch = r.epoch();
        e.train_acc = r.fraction("train_acc");
        e.train_loss = r.loss("train_loss");
        e.val_acc = r.fraction("val_acc");
        e.val_loss = r.loss("val_loss");
        entries.push_back(std::move(e));
        lines.push_back(line_no);
    });

    std::map<std::string, std::size_t> first_seen;
    std::map<std::string, int> last_epoch;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        first_seen.emplace(e.model, i);
        const auto it = last_epoch.find(e.model);
        if (it != last_epoch.end() && e.epoch <= it->second) {
            fail(ErrorCode::NonMonotoneEpochs, "model '" + e.model + "' epoch " + std::to_string(e.epoch) + " at line " +
                                                   std::to_string(lines[i]) + " does not follow epoch " +
                                                   std::to_string(it->second));
        }
        last_epoch[e.model] = e.epoch;
    }
    std::stable_sort(entries.begin(), entries.end(), [&](const EpochLogEntry& a, const EpochLogEntry& b) {
        return first_seen.at(a.model) < first_seen.at(b.model);
    });
    return entries;
}

std::vector<EpochLogEntry> load_epoch_logs(const std::filesystem::path& file) { return parse_epoch_logs(read_text(file)); }

std::string epoch_logs_to_jsonl(const std::vector<EpochLogEntry>& entries) {
    std::string out;
    for (const auto& e : entries) {
        out += json{{"model", e.model},         {"epoch", e.epoch},     {"train_acc", e.train_acc},
                    {"train_loss", e.train_loss}, {"val_acc", e.val_acc}, {"val_loss", e.val_loss}}
                   .dump() +
               "\n";
    }
    return out;
}

std::vector<RunSummary> parse_summaries(std::string_view jsonl) {
    std::vector<RunSummary> out;
    for_each_object(jsonl, "summary", [&](const LineReader& r, std::size_t) {
        RunSummary s;
        s.model = r.text("model");
        s.train_acc = r.fraction("train_acc");
        s.train_loss = r.loss("train_loss");
        s.val_acc = r.fraction("val_acc");
        s.val_loss = r.loss("val_loss");
        s.test_acc = r.fraction("test_acc");
        s.test_loss = r.loss("test_loss");
        out.push_back(std::move(s));
    });
    return out;
}

std::vector<RunSummary> load_summaries(const std::filesystem::path& file) { return parse_summaries(read_text(file)); }

std::string summaries_to_jsonl(const std::vector<RunSummary>& summaries) {
    std::string out;
    for (const auto& s : summaries) {
        out += json{{"model", s.model},       {"train_acc", s.train_acc}, {"train_loss", s.train_loss},
                    {"val_acc", s.val_acc},   {"val_loss", s.val_loss},   {"test_acc", s.test_acc},
                    {"test_loss", s.test_loss}}
                   .dump() +
               "\n";
    }
    return out;
}

}  // namespace mriprep

#include <sstream>

#include <json.hpp>

#include "mriprep/error.hpp"
#include "mriprep/metrics.hpp"

using nlohmann::json;

namespace mriprep {

std::vector<PredictionRecord> parse_predictions(std::string_view jsonl) {
    std::vector<PredictionRecord> records;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto bad = [line_no](const std::string& why) {
            fail(ErrorCode::SchemaViolation, "predictions line " + std::to_string(line_no) + ": " + why);
        };
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            bad(e.what());
        }
        if (!obj.is_object()) bad("expected an object");
        PredictionRecord r;
        for (const char* key : {"sample_id", "true_label", "pred_label"}) {
            if (!obj.contains(key) || !obj[key].is_string()) bad(std::string("missing string field \"") + key + "\"");
        }
        r.sample_id = obj["sample_id"].get<std::string>();
        r.true_label = obj["true_label"].get<std::string>();
        r.pred_label = obj["pred_label"].get<std::string>();
        if (obj.contains("probs") && !obj["probs"].is_null()) {
            if (!obj["probs"].is_array()) bad("\"probs\" must be an array");
            std::vector<double> probs;
            for (const auto& p : obj["probs"]) {
                if (!p.is_number()) bad("\"probs\" entries must be numbers");
                const double v = p.get<double>();
                if (v < 0.0 || v > 1.0) bad("probability outside [0, 1]");
                probs.push_back(v);
            }
            r.probs = std::move(probs);
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::string predictions_to_jsonl(const std::vector<PredictionRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        json obj = {{"sample_id", r.sample_id}, {"true_label", r.true_label}, {"pred_label", r.pred_label}};
        if (r.probs) obj["probs"] = *r.probs;
        out += obj.dump() + "\n";
    }
    return out;
}

}  // namespace mriprep

#include <json.hpp>

#include "mriprep/dataset.hpp"
#include "mriprep/error.hpp"

using nlohmann::json;

namespace mriprep {

namespace {

json parse_document(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::SchemaViolation, std::string(what) + " is not valid JSON: " + e.what());
    }
}

}  // namespace

std::string manifest_to_json(const DatasetManifest& manifest) {
    json samples = json::array();
    for (const auto& s : manifest.samples) {
        samples.push_back({{"id", s.id}, {"class", s.class_label}, {"width", s.width}, {"height", s.height}, {"sha256", s.sha256}});
    }
    json doc = {{"classes", manifest.classes}, {"samples", std::move(samples)}};
    if (!manifest.root.empty()) doc["root"] = manifest.root;
    return doc.dump(2) + "\n";
}

DatasetManifest manifest_from_json(std::string_view text) {
    const json doc = parse_document(text, "manifest");
    DatasetManifest m;
    try {
        m.classes = doc.at("classes").get<std::vector<std::string>>();
        if (doc.contains("root")) m.root = doc.at("root").get<std::string>();
        for (const auto& s : doc.at("samples")) {
            m.samples.push_back({s.at("id").get<std::string>(), s.at("class").get<std::string>(), s.at("width").get<int>(),
                                 s.at("height").get<int>(), s.at("sha256").get<std::string>()});
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("manifest: ") + e.what());
    }
    m.validate();
    return m;
}

std::string split_to_json(const SplitAssignment& split) {
    json assignment = json::object();
    for (const auto& [id, p] : split.assignment) assignment[id] = std::string(partition_name(p));
    const json doc = {{"seed", split.seed},
                      {"ratios", {split.ratios.train, split.ratios.val, split.ratios.test}},
                      {"stratified", split.stratified},
                      {"assignment", std::move(assignment)}};
    return doc.dump(2) + "\n";
}

SplitAssignment split_from_json(std::string_view text) {
    const json doc = parse_document(text, "split");
    SplitAssignment s;
    try {
        s.seed = doc.at("seed").get<std::uint64_t>();
        const auto r = doc.at("ratios").get<std::vector<double>>();
        if (r.size() != 3) fail(ErrorCode::SchemaViolation, "split ratios must have three entries");
        s.ratios = {r[0], r[1], r[2]};
        if (doc.contains("stratified")) s.stratified = doc.at("stratified").get<bool>();
        for (const auto& [id, p] : doc.at("assignment").items()) s.assignment[id] = parse_partition(p.get<std::string>());
    } catch (const json::exception& e) {
        fail(ErrorCode::SchemaViolation, std::string("split: ") + e.what());
    }
    return s;
}

}  // namespace mriprep

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mriprep {

struct SampleRecord {
    std::string id;           ///< path relative to the corpus root, '/'-separated
    std::string class_label;
    int width = 0;
    int height = 0;
    std::string sha256;       ///< lowercase hex digest of the file bytes

    friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct DatasetManifest {
    std::string root;                 ///< corpus directory the ids are relative to (may be empty)
    std::vector<std::string> classes;  ///< lexicographic
    std::vector<SampleRecord> samples; ///< sorted by id

    std::map<std::string, std::size_t> counts() const;
    /// Index of `label` in `classes`, or -1.
    int class_index(std::string_view label) const;
    /// Checks id uniqueness and label membership. Throws SchemaViolation.
    void validate() const;

    friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

struct ScanIssue {
    std::string path;
    std::string reason;
};

struct ScanResult {
    DatasetManifest manifest;
    std::vector<ScanIssue> skipped;          ///< undecodable files
    std::vector<std::string> empty_classes;  ///< warnings, not fatal
};

/// Each immediate subdirectory of `root` is a class; every decodable image
/// beneath it becomes a sample. Files are decoded and hashed in parallel.
ScanResult scan_dataset(const std::filesystem::path& root);

std::string sha256_hex(const std::vector<std::uint8_t>& bytes);

enum class Partition { Train, Val, Test };
std::string_view partition_name(Partition p) noexcept;
Partition parse_partition(std::string_view name);

struct SplitRatios {
    double train = 0.7;
    double val = 0.1;
    double test = 0.2;

    /// train > 0, test > 0, val >= 0, sum == 1 within 1e-9. Throws BadRatios.
    void validate() const;
};

struct SplitAssignment {
    SplitRatios ratios;
    std::uint64_t seed = 0;
    bool stratified = true;
    std::map<std::string, Partition> assignment;

    friend bool operator==(const SplitAssignment& a, const SplitAssignment& b) {
        return a.seed == b.seed && a.stratified == b.stratified && a.assignment == b.assignment &&
               a.ratios.train == b.ratios.train && a.ratios.val == b.ratios.val && a.ratios.test == b.ratios.test;
    }
};

/// Sizes of a group of `n` samples: floor(train * n), floor(val * n), remainder.
std::array<std::size_t, 3> partition_sizes(std::size_t n, const SplitRatios& ratios);

/// Per class: Fisher-Yates shuffle of the class's ids (sorted) with a 64-bit
/// generator seeded from `seed` and the class name, then floor-train,
/// floor-val, remainder-test. With `stratified == false` the whole manifest is
/// one group.
SplitAssignment stratified_split(const DatasetManifest& manifest, const SplitRatios& ratios, std::uint64_t seed,
                                 bool stratified = true);

/// partition -> class -> count
using SplitCounts = std::map<std::string, std::map<std::string, std::size_t>>;
SplitCounts split_counts(const SplitAssignment& split, const DatasetManifest& manifest);

/// Copies files into out_root/{train,val,test}/<class>/... and returns the counts written.
SplitCounts materialize_split(const SplitAssignment& split, const DatasetManifest& manifest,
                              const std::filesystem::path& out_root);

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(std::string_view text);
std::string split_to_json(const SplitAssignment& split);
SplitAssignment split_from_json(std::string_view text);

}  // namespace mriprep

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mriprep/dataset.hpp"
#include "mriprep/error.hpp"

namespace mriprep {

namespace {

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Unbiased draw in [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries, so it is not used here.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t u = rng();
        if (u >= threshold) return u % bound;
    }
}

// Absorbs representation error such as 0.7 * 2000 == 1399.9999999999998.
std::size_t floor_share(double ratio, std::size_t n) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(n) + 1e-9));
}

}  // namespace

std::string_view partition_name(Partition p) noexcept {
    switch (p) {
        case Partition::Train: return "train";
        case Partition::Val: return "val";
        case Partition::Test: return "test";
    }
    return "?";
}

Partition parse_partition(std::string_view name) {
    if (name == "train") return Partition::Train;
    if (name == "val") return Partition::Val;
    if (name == "test") return Partition::Test;
    fail(ErrorCode::SchemaViolation, "unknown partition '" + std::string(name) + "'");
}

void SplitRatios::validate() const {
    if (!std::isfinite(train) || !std::isfinite(val) || !std::isfinite(test) || train <= 0.0 || val < 0.0 ||
        test <= 0.0) {
        fail(ErrorCode::BadRatios, "train and test ratios must be positive and val non-negative");
    }
    if (std::abs(train + val + test - 1.0) > 1e-9) fail(ErrorCode::BadRatios, "ratios must sum to 1");
}

std::array<std::size_t, 3> partition_sizes(std::size_t n, const SplitRatios& ratios) {
    const std::size_t train = std::min(n, floor_share(ratios.train, n));
    const std::size_t val = std::min(n - train, floor_share(ratios.val, n));
    return {train, val, n - train - val};
}

SplitAssignment stratified_split(const DatasetManifest& manifest, const SplitRatios& ratios, std::uint64_t seed,
                                 bool stratified) {
    ratios.validate();
    if (manifest.samples.empty()) fail(ErrorCode::EmptyManifest, "manifest has no samples");

    SplitAssignment out;
    out.ratios = ratios;
    out.seed = seed;
    out.stratified = stratified;

    std::map<std::string, std::vector<std::string>> groups;
    for (const auto& s : manifest.samples) groups[stratified ? s.class_label : std::string()].push_back(s.id);

    for (auto& [name, ids] : groups) {
        std::sort(ids.begin(), ids.end());
        std::mt19937_64 rng(splitmix64(seed ^ fnv1a64(name)));
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[static_cast<std::size_t>(draw_below(rng, i))]);
        }
        const auto sizes = partition_sizes(ids.size(), ratios);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const Partition p = i < sizes[0] ? Partition::Train : i < sizes[0] + sizes[1] ? Partition::Val : Partition::Test;
            out.assignment[ids[i]] = p;
        }
    }
    return out;
}

SplitCounts split_counts(const SplitAssignment& split, const DatasetManifest& manifest) {
    SplitCounts counts;
    for (auto p : {Partition::Train, Partition::Val, Partition::Test}) {
        for (const auto& c : manifest.classes) counts[std::string(partition_name(p))][c] = 0;
    }
    for (const auto& s : manifest.samples) {
        const auto it = split.assignment.find(s.id);
        if (it == split.assignment.end()) fail(ErrorCode::SchemaViolation, "sample '" + s.id + "' is not assigned");
        ++counts[std::string(partition_name(it->second))][s.class_label];
    }
    return counts;
}

}  // namespace mriprep

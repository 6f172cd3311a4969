#include <string>

#include "mriprep/dataset.hpp"
#include "mriprep/error.hpp"

namespace fs = std::filesystem;

namespace mriprep {

SplitCounts materialize_split(const SplitAssignment& split, const DatasetManifest& manifest, const fs::path& out_root) {
    const fs::path root = manifest.root;
    SplitCounts counts;
    std::error_code ec;
    for (auto p : {Partition::Train, Partition::Val, Partition::Test}) {
        const std::string part(partition_name(p));
        for (const auto& c : manifest.classes) {
            counts[part][c] = 0;
            fs::create_directories(out_root / part / c, ec);
            if (ec) fail(ErrorCode::IoFailure, "cannot create " + (out_root / part / c).string() + ": " + ec.message());
        }
    }

    for (const auto& s : manifest.samples) {
        const auto it = split.assignment.find(s.id);
        if (it == split.assignment.end()) fail(ErrorCode::SchemaViolation, "sample '" + s.id + "' is not assigned");
        const std::string part(partition_name(it->second));
        // ids already start with the class directory
        const fs::path dest = out_root / part / fs::path(s.id);
        fs::create_directories(dest.parent_path(), ec);
        if (!ec) fs::copy_file(root / fs::path(s.id), dest, fs::copy_options::overwrite_existing, ec);
        if (ec) fail(ErrorCode::IoFailure, "cannot copy " + s.id + " to " + dest.string() + ": " + ec.message());
        ++counts[part][s.class_label];
    }
    return counts;
}

}  // namespace mriprep

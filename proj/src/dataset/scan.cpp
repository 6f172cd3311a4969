#include <algorithm>
#include <cstdio>
#include <optional>
#include <set>

#include <openssl/evp.h>

#include "mriprep/dataset.hpp"
#include "mriprep/error.hpp"
#include "mriprep/image.hpp"

namespace fs = std::filesystem;

namespace mriprep {

namespace {

bool hidden(const fs::path& p) {
    const auto name = p.filename().string();
    return !name.empty() && name.front() == '.';
}

}  // namespace

std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        fail(ErrorCode::IoFailure, "SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(len * 2);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::map<std::string, std::size_t> DatasetManifest::counts() const {
    std::map<std::string, std::size_t> out;
    for (const auto& c : classes) out[c] = 0;
    for (const auto& s : samples) ++out[s.class_label];
    return out;
}

int DatasetManifest::class_index(std::string_view label) const {
    const auto it = std::find(classes.begin(), classes.end(), label);
    return it == classes.end() ? -1 : static_cast<int>(it - classes.begin());
}

void DatasetManifest::validate() const {
    if (classes.empty()) fail(ErrorCode::SchemaViolation, "manifest has no classes");
    std::set<std::string> ids;
    for (const auto& s : samples) {
        if (!ids.insert(s.id).second) fail(ErrorCode::SchemaViolation, "duplicate sample id '" + s.id + "'");
        if (class_index(s.class_label) < 0) {
            fail(ErrorCode::SchemaViolation, "sample '" + s.id + "' has undeclared class '" + s.class_label + "'");
        }
    }
}

ScanResult scan_dataset(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) fail(ErrorCode::IoFailure, "not a directory: " + root.string());

    ScanResult result;
    result.manifest.root = root.generic_string();
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && !hidden(entry.path())) result.manifest.classes.push_back(entry.path().filename().string());
    }
    std::sort(result.manifest.classes.begin(), result.manifest.classes.end());
    if (result.manifest.classes.empty()) fail(ErrorCode::NoClassesFound, "no class subdirectories under " + root.string());

    struct Candidate {
        fs::path path;
        std::string id;
        std::string label;
    };
    std::vector<Candidate> files;
    for (const auto& label : result.manifest.classes) {
        for (auto it = fs::recursive_directory_iterator(root / label); it != fs::recursive_directory_iterator(); ++it) {
            if (hidden(it->path())) {
                if (it->is_directory()) it.disable_recursion_pending();
                continue;
            }
            if (it->is_regular_file()) files.push_back({it->path(), fs::relative(it->path(), root).generic_string(), label});
        }
    }
    std::sort(files.begin(), files.end(), [](const Candidate& a, const Candidate& b) { return a.id < b.id; });

    std::vector<std::optional<SampleRecord>> records(files.size());
    std::vector<std::string> failures(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& f = files[static_cast<std::size_t>(i)];
        try {
            const auto bytes = read_file_bytes(f.path);
            const GrayImage img = decode_image(bytes);
            records[static_cast<std::size_t>(i)] = SampleRecord{f.id, f.label, img.width(), img.height(), sha256_hex(bytes)};
        } catch (const Error& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
        }
    }

    for (std::size_t i = 0; i < files.size(); ++i) {
        if (records[i]) {
            result.manifest.samples.push_back(std::move(*records[i]));
        } else {
            result.skipped.push_back({files[i].id, failures[i]});
        }
    }
    for (const auto& [label, count] : result.manifest.counts()) {
        if (count == 0) result.empty_classes.push_back(label);
    }
    return result;
}

}  // namespace mriprep

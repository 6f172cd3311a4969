#include "mriprep/image.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include "mriprep/error.hpp"

namespace mriprep {

namespace {

void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
        fail(ErrorCode::ZeroDimension,
             "image dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

GrayImage::GrayImage(int width, int height) : GrayImage(width, height, std::uint8_t{0}) {}

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        fail(ErrorCode::InvalidImage, "pixel buffer holds " + std::to_string(data_.size()) + " values, expected " +
                                          std::to_string(static_cast<std::size_t>(width) * height));
    }
}

std::uint8_t GrayImage::clamped(int x, int y) const noexcept {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return data_[index(x, y)];
}

std::uint64_t pixel_checksum(const GrayImage& img) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint8_t b) {
        h ^= b;
        h *= 0x100000001b3ull;
    };
    for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(img.width() >> shift));
    for (int shift = 0; shift < 32; shift += 8) mix(static_cast<std::uint8_t>(img.height() >> shift));
    for (auto v : img.pixels()) mix(v);
    return h;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoFailure, "cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) fail(ErrorCode::IoFailure, "read failed for " + path.string());
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) fail(ErrorCode::IoFailure, "cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoFailure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::IoFailure, "write failed for " + path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace mriprep

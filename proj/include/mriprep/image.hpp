#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace mriprep {

/// 8-bit single-channel raster, row-major with a top-left origin.
class GrayImage {
public:
    GrayImage() = default;
    /// Zero-filled image. Throws ZeroDimension if either side is 0.
    GrayImage(int width, int height);
    GrayImage(int width, int height, std::uint8_t fill);
    /// Throws InvalidImage when data.size() != width * height.
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int x, int y) const noexcept { return data_[index(x, y)]; }
    std::uint8_t& at(int x, int y) noexcept { return data_[index(x, y)]; }

    /// Edge-replicated read: coordinates outside the raster clamp to the border.
    std::uint8_t clamped(int x, int y) const noexcept;

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }
    std::span<const std::uint8_t> row(int y) const noexcept {
        return std::span<const std::uint8_t>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
    }
    std::span<std::uint8_t> row(int y) noexcept {
        return std::span<std::uint8_t>(data_).subspan(static_cast<std::size_t>(y) * width_, width_);
    }

    bool same_shape(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

enum class ImageFormat { Png, Jpeg, Bmp };

struct EncodeFormat {
    ImageFormat format = ImageFormat::Png;
    int jpeg_quality = 95;
};

/// Accepts "png", "jpeg", "jpg" and "jpeg-quality-<q>" (q in 1..100).
EncodeFormat parse_encode_format(std::string_view name);

/// Decodes JPEG, PNG or BMP bytes into a grayscale buffer. Color input is
/// reduced with integer Rec.601 luma, (299 R + 587 G + 114 B + 500) / 1000.
GrayImage decode_image(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_image(const GrayImage& img, const EncodeFormat& format);

GrayImage read_image(const std::filesystem::path& path);
void write_image(const GrayImage& img, const std::filesystem::path& path, const EncodeFormat& format = {});

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Bilinear resize with half-pixel centers, rounding half-up.
GrayImage resize_bilinear(const GrayImage& img, int width, int height);

/// Integer Rec.601 luma with half-up rounding.
constexpr std::uint8_t luma601(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

/// FNV-1a 64 over the canonical pixel bytes, prefixed by the dimensions.
std::uint64_t pixel_checksum(const GrayImage& img) noexcept;

}  // namespace mriprep

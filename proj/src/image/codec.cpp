#include <algorithm>
#include <charconv>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "mriprep/error.hpp"
#include "mriprep/image.hpp"

namespace mriprep {

namespace {

enum class Signature { Jpeg, Png, Bmp, OtherKnown, Unknown };

Signature sniff(std::span<const std::uint8_t> b) {
    auto starts = [&b](std::initializer_list<std::uint8_t> magic) {
        return b.size() >= magic.size() && std::equal(magic.begin(), magic.end(), b.begin());
    };
    if (starts({0xFF, 0xD8, 0xFF})) return Signature::Jpeg;
    if (starts({0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A})) return Signature::Png;
    if (starts({'B', 'M'})) return Signature::Bmp;
    // TIFF, GIF, WebP (RIFF), JPEG 2000, OpenEXR
    if (starts({'I', 'I', 0x2A, 0x00}) || starts({'M', 'M', 0x00, 0x2A}) || starts({'G', 'I', 'F', '8'}) ||
        starts({'R', 'I', 'F', 'F'}) || starts({0x00, 0x00, 0x00, 0x0C, 'j', 'P'}) ||
        starts({0x76, 0x2F, 0x31, 0x01})) {
        return Signature::OtherKnown;
    }
    return Signature::Unknown;
}

}  // namespace

EncodeFormat parse_encode_format(std::string_view name) {
    if (name == "png") return {ImageFormat::Png, 0};
    if (name == "jpeg" || name == "jpg") return {ImageFormat::Jpeg, 95};
    constexpr std::string_view prefix = "jpeg-quality-";
    if (name.starts_with(prefix)) {
        auto digits = name.substr(prefix.size());
        int q = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && q >= 1 && q <= 100) {
            return {ImageFormat::Jpeg, q};
        }
    }
    fail(ErrorCode::UnsupportedFormat, "unsupported output format '" + std::string(name) + "'");
}

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
    const auto sig = sniff(bytes);
    if (sig == Signature::OtherKnown) fail(ErrorCode::UnsupportedFormat, "only JPEG, PNG and BMP are accepted");
    if (sig == Signature::Unknown) fail(ErrorCode::MalformedImage, "unrecognized image signature");

    cv::Mat decoded;
    try {
        const cv::Mat raw(1, static_cast<int>(bytes.size()), CV_8UC1, const_cast<std::uint8_t*>(bytes.data()));
        decoded = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
    } catch (const cv::Exception& e) {
        fail(ErrorCode::MalformedImage, e.what());
    }
    if (decoded.empty()) fail(ErrorCode::MalformedImage, "decoder rejected the payload");
    if (decoded.depth() != CV_8U) fail(ErrorCode::UnsupportedFormat, "only 8-bit samples are supported");

    GrayImage out(decoded.cols, decoded.rows);
    const int channels = decoded.channels();
    for (int y = 0; y < decoded.rows; ++y) {
        const std::uint8_t* src = decoded.ptr<std::uint8_t>(y);
        auto dst = out.row(y);
        for (int x = 0; x < decoded.cols; ++x) {
            const std::uint8_t* px = src + static_cast<std::ptrdiff_t>(x) * channels;
            // OpenCV stores color as BGR(A); gray+alpha keeps the gray sample.
            dst[x] = channels >= 3 ? luma601(px[2], px[1], px[0]) : px[0];
        }
    }
    return out;
}

std::vector<std::uint8_t> encode_image(const GrayImage& img, const EncodeFormat& format) {
    if (img.empty()) fail(ErrorCode::InvalidImage, "cannot encode an empty image");
    const cv::Mat view(img.height(), img.width(), CV_8UC1, const_cast<std::uint8_t*>(img.pixels().data()));
    std::vector<int> params;
    std::string ext;
    switch (format.format) {
        case ImageFormat::Png:
            ext = ".png";
            params = {cv::IMWRITE_PNG_COMPRESSION, 6};
            break;
        case ImageFormat::Jpeg:
            ext = ".jpg";
            params = {cv::IMWRITE_JPEG_QUALITY, format.jpeg_quality};
            break;
        case ImageFormat::Bmp:
            ext = ".bmp";
            break;
    }
    std::vector<std::uint8_t> buffer;
    if (!cv::imencode(ext, view, buffer, params)) fail(ErrorCode::UnsupportedFormat, "encoder failed for " + ext);
    return buffer;
}

GrayImage read_image(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    try {
        return decode_image(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

void write_image(const GrayImage& img, const std::filesystem::path& path, const EncodeFormat& format) {
    write_file_bytes(path, encode_image(img, format));
}

}  // namespace mriprep

#include <doctest.h>

#include <cmath>
#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "expect_error.hpp"
#include "generators.hpp"
#include "mriprep/error.hpp"
#include "mriprep/image.hpp"
#include "mriprep/reference/reference.hpp"

using namespace mriprep;

TEST_SUITE_BEGIN("image");

namespace {

std::vector<std::uint8_t> encode_color(const char* ext, cv::Scalar bgr) {
    cv::Mat m(1, 1, CV_8UC3, bgr);
    std::vector<std::uint8_t> buf;
    cv::imencode(ext, m, buf);
    return buf;
}

// Bilinear sample at output column x for a 1-row image, written from scratch.
double scalar_bilinear(const std::vector<double>& src, int out_w, int x) {
    const double scale = static_cast<double>(src.size()) / out_w;
    double pos = (x + 0.5) * scale - 0.5;
    pos = std::max(0.0, std::min(pos, static_cast<double>(src.size() - 1)));
    const auto i = static_cast<std::size_t>(pos);
    const std::size_t j = std::min(i + 1, src.size() - 1);
    const double f = pos - static_cast<double>(i);
    return (1 - f) * src[i] + f * src[j];
}

}  // namespace

TEST_CASE("GrayImage enforces its shape") {
    CHECK(testsupport::error_code([] { GrayImage(0, 3); }) == ErrorCode::ZeroDimension);
    CHECK(testsupport::error_code([] { GrayImage(2, 2, std::vector<std::uint8_t>{1, 2, 3}); }) == ErrorCode::InvalidImage);
    GrayImage img(3, 2, std::vector<std::uint8_t>{1, 2, 3, 4, 5, 6});
    CHECK(img.at(2, 1) == 6);
    CHECK(img.clamped(-5, 0) == 1);
    CHECK(img.clamped(9, 9) == 6);
}

TEST_CASE("decode: white JPEG and red PNG") {
    const GrayImage white = decode_image(encode_color(".jpg", {255, 255, 255}));
    CHECK(white == GrayImage(1, 1, std::vector<std::uint8_t>{255}));

    // round(0.299 * 255) = round(76.245) = 76
    const GrayImage red = decode_image(encode_color(".png", {0, 0, 255}));
    CHECK(red == GrayImage(1, 1, std::vector<std::uint8_t>{76}));

    // BMP goes through the same luma path: green 0.587 * 255 = 149.685 -> 150
    const GrayImage green = decode_image(encode_color(".bmp", {0, 255, 0}));
    CHECK(green.at(0, 0) == 150);
}

TEST_CASE("decode: rejects garbage and foreign formats") {
    const std::vector<std::uint8_t> garbage = {0x13, 0x37, 0xde, 0xad, 0xbe, 0xef, 0x00, 0x11,
                                               0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88, 0x99};
    CHECK(testsupport::error_code([&] { decode_image(garbage); }) == ErrorCode::MalformedImage);

    const std::vector<std::uint8_t> tiff = {'I', 'I', 0x2A, 0x00, 8, 0, 0, 0};
    CHECK(testsupport::error_code([&] { decode_image(tiff); }) == ErrorCode::UnsupportedFormat);

    auto png = encode_image(GrayImage(4, 4, 9), {ImageFormat::Png, 0});
    png.resize(20);
    CHECK(testsupport::error_code([&] { decode_image(png); }) == ErrorCode::MalformedImage);
}

TEST_CASE("encode: PNG round trips losslessly") {
    const GrayImage one(1, 1, std::vector<std::uint8_t>{0});
    CHECK(decode_image(encode_image(one, parse_encode_format("png"))) == one);
    const GrayImage four(2, 2, std::vector<std::uint8_t>{0, 64, 128, 255});
    CHECK(decode_image(encode_image(four, parse_encode_format("png"))) == four);

    testsupport::Rng rng(7);
    for (int i = 0; i < 40; ++i) {
        const GrayImage img = testsupport::random_image(rng, 48);
        const GrayImage back = decode_image(encode_image(img, {ImageFormat::Png, 0}));
        REQUIRE(back == img);
    }
}

TEST_CASE("encode: formats") {
    CHECK(testsupport::error_code([] { parse_encode_format("tiff"); }) == ErrorCode::UnsupportedFormat);
    CHECK(testsupport::error_code([] { parse_encode_format("jpeg-quality-0"); }) == ErrorCode::UnsupportedFormat);
    CHECK(parse_encode_format("jpeg-quality-80").jpeg_quality == 80);

    const GrayImage flat(16, 16, 120);
    const GrayImage back = decode_image(encode_image(flat, parse_encode_format("jpeg-quality-90")));
    REQUIRE(back.same_shape(flat));
    for (auto v : back.pixels()) CHECK(std::abs(int{v} - 120) <= 1);
}

TEST_CASE("resize: identity, constant extension, 2x1 -> 4x1") {
    testsupport::Rng rng(3);
    const GrayImage img = testsupport::random_image(rng, 17, 9);
    CHECK(resize_bilinear(img, 17, 9) == img);

    const GrayImage dot(1, 1, std::vector<std::uint8_t>{100});
    CHECK(resize_bilinear(dot, 3, 3) == GrayImage(3, 3, 100));

    const GrayImage ramp(2, 1, std::vector<std::uint8_t>{0, 255});
    const GrayImage out = resize_bilinear(ramp, 4, 1);
    const std::vector<double> src = {0, 255};
    for (int x = 0; x < 4; ++x) {
        CHECK(out.at(x, 0) == static_cast<int>(std::floor(scalar_bilinear(src, 4, x) + 0.5)));
    }
    // frozen from the evaluator above: 0, 63.75, 191.25, 255
    CHECK(out == GrayImage(4, 1, std::vector<std::uint8_t>{0, 64, 191, 255}));

    CHECK(testsupport::error_code([&] { resize_bilinear(img, 0, 4); }) == ErrorCode::ZeroDimension);
}

TEST_CASE("resize: properties on random images") {
    testsupport::Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const int w = testsupport::uniform_int(rng, 1, 40);
        const int h = testsupport::uniform_int(rng, 1, 40);
        const auto c = static_cast<std::uint8_t>(testsupport::uniform_int(rng, 0, 255));
        CHECK(resize_bilinear(GrayImage(w, h, c), w * 2 + 1, h + 3) == GrayImage(w * 2 + 1, h + 3, c));

        const GrayImage img = testsupport::random_image(rng, w, h);
        const int tw = testsupport::uniform_int(rng, 1, 64);
        const int th = testsupport::uniform_int(rng, 1, 64);
        CHECK(resize_bilinear(img, tw, th) == reference::resize_bilinear(img, tw, th));
    }
}

TEST_CASE("file helpers round trip") {
    const auto dir = testsupport::scratch_dir("image_io");
    const GrayImage img(5, 3, 42);
    write_image(img, dir / "nested" / "a.png");
    CHECK(read_image(dir / "nested" / "a.png") == img);
    CHECK(testsupport::error_code([&] { read_image(dir / "missing.png"); }) == ErrorCode::IoFailure);
}

TEST_SUITE_END();

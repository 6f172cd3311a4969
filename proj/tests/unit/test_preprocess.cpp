#include <doctest.h>

#include <algorithm>

#include "expect_error.hpp"
#include "generators.hpp"
#include "mriprep/preprocess.hpp"
#include "mriprep/quality.hpp"
#include "mriprep/reference/reference.hpp"

using namespace mriprep;
using testsupport::error_code;

TEST_SUITE_BEGIN("preprocess");

TEST_CASE("median: constant images and identity kernel") {
    const GrayImage flat(13, 7, 88);
    for (int k : {1, 3, 5, 7, 9}) CHECK(median_filter(flat, k) == flat);

    testsupport::Rng rng(1);
    const GrayImage img = testsupport::random_image(rng, 20, 11);
    CHECK(median_filter(img, 1) == img);
}

TEST_CASE("median: bright center on a 3x3 field") {
    GrayImage img(3, 3, 10);
    img.at(1, 1) = 255;
    // every replicated 9-neighbourhood holds at most 4 copies of 255
    CHECK(median_filter(img, 3) == GrayImage(3, 3, 10));
}

TEST_CASE("median: matches the window-sort oracle") {
    testsupport::Rng rng(2);
    for (int k : {3, 5}) {
        const GrayImage img = testsupport::random_image(rng, 32, 32);
        CHECK(median_filter(img, k) == reference::median_filter(img, k));
    }
    for (int i = 0; i < 20; ++i) {
        const GrayImage img = testsupport::random_image(rng, 24);
        const int k = 2 * testsupport::uniform_int(rng, 0, 4) + 1;
        REQUIRE(median_filter(img, k) == reference::median_filter(img, k));
    }
}

TEST_CASE("median: output values come from the input window") {
    testsupport::Rng rng(3);
    const GrayImage img = testsupport::random_image(rng, 23, 17);
    const GrayImage out = median_filter(img, 5);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            bool found = false;
            for (int dy = -2; dy <= 2 && !found; ++dy) {
                for (int dx = -2; dx <= 2 && !found; ++dx) found = img.clamped(x + dx, y + dy) == out.at(x, y);
            }
            REQUIRE(found);
        }
    }
}

TEST_CASE("median: even or non-positive kernels are rejected") {
    const GrayImage img(4, 4, 1);
    CHECK(error_code([&] { median_filter(img, 2); }) == ErrorCode::EvenKernel);
    CHECK(error_code([&] { median_filter(img, 0); }) == ErrorCode::EvenKernel);
}

TEST_CASE("opening: constant image, impurity removal, identity SE") {
    const GrayImage flat(9, 5, 200);
    for (int s : {1, 3, 5, 7}) CHECK(morphological_opening(flat, s) == flat);

    GrayImage speck(9, 9, 0);
    speck.at(4, 4) = 255;
    CHECK(morphological_opening(speck, 3) == GrayImage(9, 9, 0));

    testsupport::Rng rng(4);
    const GrayImage img = testsupport::random_image(rng, 10, 10);
    CHECK(morphological_opening(img, 1) == img);
    CHECK(error_code([&] { morphological_opening(img, 4); }) == ErrorCode::EvenStructuringElement);
}

TEST_CASE("opening: separable passes match the min/max window oracle") {
    testsupport::Rng rng(5);
    const GrayImage img = testsupport::random_image(rng, 16, 16);
    CHECK(morphological_opening(img, 3) == reference::opening(img, 3));
    for (int i = 0; i < 25; ++i) {
        const GrayImage r = testsupport::random_image(rng, 40);
        const int s = 2 * testsupport::uniform_int(rng, 1, 3) + 1;
        REQUIRE(erode(r, s) == reference::erode(r, s));
        REQUIRE(dilate(r, s) == reference::dilate(r, s));
        REQUIRE(morphological_opening(r, s) == reference::opening(r, s));
    }
}

TEST_CASE("opening: idempotent and anti-extensive") {
    testsupport::Rng rng(6);
    for (int i = 0; i < 30; ++i) {
        const GrayImage img = testsupport::random_image(rng, 48);
        const int s = 2 * testsupport::uniform_int(rng, 1, 3) + 1;
        const GrayImage once = morphological_opening(img, s);
        REQUIRE(morphological_opening(once, s) == once);
        for (std::size_t p = 0; p < img.size(); ++p) REQUIRE(once.pixels()[p] <= img.pixels()[p]);
    }
}

TEST_CASE("clahe: clip ceiling and single-pass redistribution") {
    CHECK(clahe_clip_ceiling(2.0, 64) == 1);     // round(0.5) half-up, floored at 1
    CHECK(clahe_clip_ceiling(2.0, 4096) == 32);
    CHECK(clahe_clip_ceiling(0.01, 100) == 1);

    std::array<std::uint32_t, kClaheBins> hist{};
    hist[10] = 600;
    hist[20] = 424;
    const ToneMapping m = clahe_mapping(hist, 8);
    CHECK(m[255] == 255);
    CHECK(std::is_sorted(m.begin(), m.end()));
    // excess 1008: 3 per bin, residual 240 to bins 0..239; cdf(10) = 11 * 4 + 8 = 52 of 1024
    CHECK(m[10] == 13);
    CHECK(m[9] == 10);  // 40 of 1024
}

TEST_CASE("clahe: constant images stay constant") {
    testsupport::Rng rng(8);
    for (int i = 0; i < 25; ++i) {
        const int w = testsupport::uniform_int(rng, 8, 70);
        const int h = testsupport::uniform_int(rng, 8, 70);
        PipelineConfig cfg;
        cfg.clahe_tiles_x = testsupport::uniform_int(rng, 1, 8);
        cfg.clahe_tiles_y = testsupport::uniform_int(rng, 1, 8);
        cfg.clahe_clip = std::uniform_real_distribution<double>(0.1, 50.0)(rng);
        const GrayImage flat(w, h, static_cast<std::uint8_t>(testsupport::uniform_int(rng, 0, 255)));
        const GrayImage out = clahe(flat, cfg);
        REQUIRE(std::all_of(out.pixels().begin(), out.pixels().end(), [&](auto v) { return v == out.pixels()[0]; }));
    }
    PipelineConfig unclipped;
    unclipped.clahe_tiles_x = unclipped.clahe_tiles_y = 1;
    unclipped.clahe_clip = 1000.0;
    CHECK(clahe(GrayImage(8, 8, 37), unclipped) == GrayImage(8, 8, 255));
}

TEST_CASE("clahe: unclipped single tile equals histogram equalization") {
    GrayImage img(8, 8);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) img.at(x, y) = x < 4 ? 100 : 150;
    }
    PipelineConfig cfg;
    cfg.clahe_tiles_x = cfg.clahe_tiles_y = 1;
    cfg.clahe_clip = 256.0;  // ceiling 64: nothing clips

    // m(v) = round(255 * cdf(v)): cdf(100) = 0.5, cdf(150) = 1
    const GrayImage out = clahe(img, cfg);
    for (int y = 0; y < 8; ++y) {
        for (int x = 0; x < 8; ++x) CHECK(out.at(x, y) == (x < 4 ? 128 : 255));
    }
}

TEST_CASE("clahe: per-tile mappings match the tile-histogram oracle") {
    testsupport::Rng rng(9);
    PipelineConfig cfg;
    const GrayImage img = testsupport::random_image(rng, 64, 64);
    const auto maps = clahe_tile_mappings(img, cfg);
    REQUIRE(maps.size() == 64);
    CHECK(maps == reference::clahe_tile_mappings(img, 8, 8, 2.0));
    for (const auto& m : maps) CHECK(std::is_sorted(m.begin(), m.end()));
    CHECK(clahe(img, cfg) == reference::clahe(img, 8, 8, 2.0));

    for (int i = 0; i < 20; ++i) {
        const GrayImage r = testsupport::random_image(rng, testsupport::uniform_int(rng, 8, 64), testsupport::uniform_int(rng, 8, 64));
        PipelineConfig c;
        c.clahe_tiles_x = testsupport::uniform_int(rng, 1, 8);
        c.clahe_tiles_y = testsupport::uniform_int(rng, 1, 8);
        c.clahe_clip = std::uniform_real_distribution<double>(0.5, 8.0)(rng);
        REQUIRE(clahe(r, c) == reference::clahe(r, c.clahe_tiles_x, c.clahe_tiles_y, c.clahe_clip));
    }
}

TEST_CASE("clahe: configuration errors") {
    PipelineConfig cfg;
    CHECK(error_code([&] { clahe(GrayImage(4, 20, 1), cfg); }) == ErrorCode::TileGridTooFine);
    cfg.clahe_clip = 0.0;
    CHECK(error_code([&] { clahe(GrayImage(20, 20, 1), cfg); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("pipeline: identity configuration") {
    testsupport::Rng rng(10);
    const GrayImage img = testsupport::random_image(rng, 30, 30);
    PipelineConfig cfg;
    cfg.median_kernel = 1;
    cfg.opening_se_side = 1;
    cfg.clahe_enabled = false;
    const auto [out, trace] = run_pipeline(img, cfg);
    CHECK(out == img);
    REQUIRE(trace.size() == 2);
    CHECK(trace[0].input_checksum == trace[0].output_checksum);
    CHECK(trace[1].output_checksum == pixel_checksum(img));
}

TEST_CASE("pipeline: default order and stop-after") {
    testsupport::Rng rng(11);
    const GrayImage img = testsupport::random_image(rng, 64, 64);
    const auto [out, trace] = run_pipeline(img, PipelineConfig{});
    REQUIRE(trace.size() == 3);
    CHECK(trace[0].name == "median");
    CHECK(trace[1].name == "opening");
    CHECK(trace[2].name == "clahe");
    CHECK(trace[1].input_checksum == trace[0].output_checksum);
    CHECK(trace[2].output_checksum == pixel_checksum(out));
    CHECK(out == clahe(morphological_opening(median_filter(img, 3), 3), PipelineConfig{}));

    const auto [partial, short_trace] = run_pipeline(img, PipelineConfig{}, Stage::Median);
    CHECK(short_trace.size() == 1);
    CHECK(partial == median_filter(img, 3));

    PipelineConfig bad;
    bad.median_kernel = 4;
    CHECK(error_code([&] { run_pipeline(img, bad); }) == ErrorCode::EvenKernel);
}

TEST_CASE("pipeline: removes salt-and-pepper noise") {
    testsupport::Rng rng(12);
    const GrayImage clean = testsupport::quadrant_image(64, 64, 60, 100, 150, 200);
    const GrayImage noisy = testsupport::salt_and_pepper(clean, 0.05, rng);
    const auto [out, trace] = run_pipeline(noisy, PipelineConfig{});
    const double before = fidelity(clean, noisy).mse;
    const double after = fidelity(clean, out).mse;
    INFO("noisy mse " << before << ", processed mse " << after);
    CHECK(after < before);
}

TEST_SUITE_END();

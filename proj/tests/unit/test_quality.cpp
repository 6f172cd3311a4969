#include <doctest.h>

#include <cmath>

#include "expect_error.hpp"
#include "generators.hpp"
#include "mriprep/format.hpp"
#include "mriprep/quality.hpp"
#include "mriprep/reference/reference.hpp"

using namespace mriprep;
using testsupport::error_code;

TEST_SUITE_BEGIN("quality");

TEST_CASE("fidelity: identical images") {
    testsupport::Rng rng(1);
    const GrayImage img = testsupport::random_image(rng, 20, 20);
    const Fidelity f = fidelity(img, img);
    CHECK(f.mse == 0.0);
    CHECK(f.rmse == 0.0);
    CHECK(std::isinf(f.psnr_db));
}

TEST_CASE("fidelity: off-by-one everywhere") {
    testsupport::Rng rng(2);
    const GrayImage a = testsupport::random_image(rng, 31, 17, 0, 254);
    GrayImage b = a;
    for (auto& v : b.pixels()) ++v;
    const Fidelity f = fidelity(a, b);
    CHECK(f.mse == 1.0);
    CHECK(f.rmse == 1.0);
    // 10 log10(255^2 / 1) = 20 log10(255)
    CHECK(f.psnr_db == doctest::Approx(20.0 * std::log10(255.0)).epsilon(1e-12));
    CHECK(std::abs(f.psnr_db - 48.1308) < 1e-3);
}

TEST_CASE("fidelity: symmetric, rmse^2 == mse, matches naive mse") {
    testsupport::Rng rng(3);
    for (int i = 0; i < 30; ++i) {
        const int w = testsupport::uniform_int(rng, 1, 40);
        const int h = testsupport::uniform_int(rng, 1, 40);
        const GrayImage a = testsupport::random_image(rng, w, h);
        const GrayImage b = testsupport::random_image(rng, w, h);
        const Fidelity ab = fidelity(a, b);
        CHECK(ab.mse == fidelity(b, a).mse);
        CHECK(ab.mse == doctest::Approx(reference::mse(a, b)).epsilon(1e-12));
        CHECK(std::abs(ab.rmse * ab.rmse - ab.mse) <= 1e-9 * ab.mse);
    }
    CHECK(error_code([] { fidelity(GrayImage(2, 3), GrayImage(3, 2)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("psnr decreases strictly along an mse ladder") {
    double previous = psnr_from_mse(1e-6);
    for (double mse = 1e-3; mse < 70000; mse *= 1.7) {
        const double p = psnr_from_mse(mse);
        CHECK(p < previous);
        previous = p;
    }
}

TEST_CASE("ssim: self-similarity, symmetry and the bound") {
    testsupport::Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const int w = testsupport::uniform_int(rng, 11, 45);
        const int h = testsupport::uniform_int(rng, 11, 45);
        const GrayImage a = testsupport::random_image(rng, w, h);
        const GrayImage b = testsupport::random_image(rng, w, h);
        CHECK(ssim(a, a) == 1.0);
        CHECK(ssim(a, b) == ssim(b, a));
        CHECK(ssim(a, b) < 1.0);
    }
}

TEST_CASE("ssim: separable windows match direct summation") {
    testsupport::Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        const GrayImage a = testsupport::random_image(rng, 32, 32);
        GrayImage b = a;
        // correlated pair so SSIM is far from zero
        for (auto& v : b.pixels()) v = static_cast<std::uint8_t>(std::clamp(int{v} + testsupport::uniform_int(rng, -20, 20), 0, 255));
        CHECK(std::abs(ssim(a, b) - reference::ssim(a, b)) < 1e-9);
        const GrayImage c = testsupport::random_image(rng, 32, 32);
        CHECK(std::abs(ssim(a, c) - reference::ssim(a, c)) < 1e-9);
    }
}

TEST_CASE("ssim: gaussian taps are normalized") {
    double total = 0.0;
    for (double t : ssim_gaussian_taps()) total += t;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ssim: size and shape errors") {
    CHECK(error_code([] { ssim(GrayImage(10, 20), GrayImage(10, 20)); }) == ErrorCode::ImageTooSmall);
    CHECK(error_code([] { ssim(GrayImage(12, 20), GrayImage(20, 12)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("verify_batch: order, composition, error annotation") {
    CHECK(verify_batch({}).empty());

    testsupport::Rng rng(6);
    std::vector<QualityPair> pairs;
    for (int i = 0; i < 5; ++i) {
        GrayImage ref = testsupport::random_image(rng, 24, 20);
        GrayImage test = i == 2 ? ref : testsupport::random_image(rng, 24, 20);
        pairs.push_back({"Image-" + std::to_string(i + 1), std::move(ref), std::move(test)});
    }
    const auto reports = verify_batch(pairs);
    REQUIRE(reports.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(reports[i].image_id == pairs[i].image_id);
        const Fidelity f = fidelity(pairs[i].reference, pairs[i].processed);
        CHECK(reports[i].mse == f.mse);
        CHECK(reports[i].rmse == f.rmse);
        CHECK(reports[i].psnr_db == f.psnr_db);
        CHECK(reports[i].ssim == ssim(pairs[i].reference, pairs[i].processed));
    }

    const std::string csv = quality_csv(reports);
    CHECK(csv.starts_with("image_id,mse,rmse,psnr_db,ssim\n"));
    CHECK(csv.find("Image-3,0,0,inf,1\n") != std::string::npos);

    pairs.push_back({"odd-one", GrayImage(24, 20), GrayImage(20, 24)});
    const std::string msg = testsupport::error_message([&] { verify_batch(pairs); });
    CHECK(msg.find("DimensionMismatch") != std::string::npos);
    CHECK(msg.find("odd-one") != std::string::npos);
}

TEST_SUITE_END();

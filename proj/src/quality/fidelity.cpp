#include <cmath>
#include <cstdint>
#include <string>

#include "mriprep/error.hpp"
#include "mriprep/quality.hpp"

namespace mriprep {

namespace {

void require_same_shape(const GrayImage& ref, const GrayImage& test) {
    if (!ref.same_shape(test)) {
        fail(ErrorCode::DimensionMismatch, std::to_string(ref.width()) + "x" + std::to_string(ref.height()) + " vs " +
                                               std::to_string(test.width()) + "x" + std::to_string(test.height()));
    }
}

}  // namespace

double psnr_from_mse(double mse) noexcept {
    if (mse == 0.0) return kInfinitePsnr;
    return 10.0 * std::log10(kPsnrPeak * kPsnrPeak / mse);
}

Fidelity fidelity(const GrayImage& ref, const GrayImage& test) {
    require_same_shape(ref, test);
    if (ref.empty()) fail(ErrorCode::InvalidImage, "empty images");
    const auto a = ref.pixels();
    const auto b = test.pixels();
    std::int64_t sum = 0;
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const int d = int{a[i]} - int{b[i]};
        sum += d * d;
    }
    const double mse = static_cast<double>(sum) / static_cast<double>(n);
    return {mse, std::sqrt(mse), psnr_from_mse(mse)};
}

std::array<double, SsimParams::kWindow> ssim_gaussian_taps() {
    std::array<double, SsimParams::kWindow> taps{};
    constexpr int r = SsimParams::kWindow / 2;
    double total = 0.0;
    for (int i = -r; i <= r; ++i) {
        taps[static_cast<std::size_t>(i + r)] = std::exp(-(i * i) / (2.0 * SsimParams::kSigma * SsimParams::kSigma));
        total += taps[static_cast<std::size_t>(i + r)];
    }
    for (auto& t : taps) t /= total;
    return taps;
}

double ssim(const GrayImage& ref, const GrayImage& test) {
    require_same_shape(ref, test);
    constexpr int win = SsimParams::kWindow;
    if (ref.width() < win || ref.height() < win) {
        fail(ErrorCode::ImageTooSmall, "SSIM needs both sides >= " + std::to_string(win));
    }
    const auto taps = ssim_gaussian_taps();
    const int w = ref.width();
    const int h = ref.height();
    const int ow = w - win + 1;
    const int oh = h - win + 1;

    // Horizontal pass of the five moment images, restricted to valid columns.
    const std::size_t plane = static_cast<std::size_t>(ow) * h;
    std::vector<double> hx(plane), hy(plane), hxx(plane), hyy(plane), hxy(plane);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto ra = ref.row(y);
        const auto rb = test.row(y);
        for (int x = 0; x < ow; ++x) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < win; ++i) {
                const double t = taps[static_cast<std::size_t>(i)];
                const double a = ra[x + i];
                const double b = rb[x + i];
                sx += t * a;
                sy += t * b;
                sxx += t * (a * a);
                syy += t * (b * b);
                sxy += t * (a * b);
            }
            const std::size_t k = static_cast<std::size_t>(y) * ow + x;
            hx[k] = sx;
            hy[k] = sy;
            hxx[k] = sxx;
            hyy[k] = syy;
            hxy[k] = sxy;
        }
    }

    // Row sums are combined serially so the result does not depend on the schedule.
    std::vector<double> row_sums(static_cast<std::size_t>(oh));
#pragma omp parallel for schedule(static)
    for (int y = 0; y < oh; ++y) {
        double row_sum = 0.0;
        for (int x = 0; x < ow; ++x) {
            double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
            for (int j = 0; j < win; ++j) {
                const double t = taps[static_cast<std::size_t>(j)];
                const std::size_t k = static_cast<std::size_t>(y + j) * ow + x;
                mx += t * hx[k];
                my += t * hy[k];
                mxx += t * hxx[k];
                myy += t * hyy[k];
                mxy += t * hxy[k];
            }
            const double vx = mxx - mx * mx;
            const double vy = myy - my * my;
            const double cxy = mxy - mx * my;
            const double num = (2.0 * mx * my + SsimParams::kC1) * (2.0 * cxy + SsimParams::kC2);
            const double den = (mx * mx + my * my + SsimParams::kC1) * (vx + vy + SsimParams::kC2);
            row_sum += num / den;
        }
        row_sums[static_cast<std::size_t>(y)] = row_sum;
    }
    double total = 0.0;
    for (double r : row_sums) total += r;
    return total / (static_cast<double>(ow) * oh);
}

}  // namespace mriprep

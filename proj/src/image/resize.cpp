#include <algorithm>
#include <cmath>
#include <vector>

#include "mriprep/error.hpp"
#include "mriprep/image.hpp"

namespace mriprep {

namespace {

struct Tap {
    int lo;
    int hi;
    double frac;
};

// Source sample positions for one axis under the half-pixel-center convention.
std::vector<Tap> axis_taps(int src, int dst) {
    std::vector<Tap> taps(static_cast<std::size_t>(dst));
    const double scale = static_cast<double>(src) / dst;
    for (int i = 0; i < dst; ++i) {
        double pos = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
        int lo = static_cast<int>(std::floor(pos));
        taps[static_cast<std::size_t>(i)] = {lo, std::min(lo + 1, src - 1), pos - lo};
    }
    return taps;
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
    if (width <= 0 || height <= 0) fail(ErrorCode::ZeroDimension, "resize target must be positive");
    if (img.empty()) fail(ErrorCode::InvalidImage, "cannot resize an empty image");
    if (width == img.width() && height == img.height()) return img;

    const auto xs = axis_taps(img.width(), width);
    const auto ys = axis_taps(img.height(), height);
    GrayImage out(width, height);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y) {
        const Tap ty = ys[static_cast<std::size_t>(y)];
        const auto top = img.row(ty.lo);
        const auto bottom = img.row(ty.hi);
        auto dst = out.row(y);
        for (int x = 0; x < width; ++x) {
            const Tap tx = xs[static_cast<std::size_t>(x)];
            const double a = top[tx.lo] + tx.frac * (top[tx.hi] - top[tx.lo]);
            const double b = bottom[tx.lo] + tx.frac * (bottom[tx.hi] - bottom[tx.lo]);
            const double v = a + ty.frac * (b - a);
            dst[x] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

}  // namespace mriprep

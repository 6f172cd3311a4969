#include <algorithm>
#include <functional>
#include <string>

#include "mriprep/error.hpp"
#include "mriprep/preprocess.hpp"

namespace mriprep {

namespace {

void check_side(int side) {
    if (side < 1 || side % 2 == 0) {
        fail(ErrorCode::EvenStructuringElement, "structuring element side must be odd and >= 1, got " + std::to_string(side));
    }
}

// A flat square is the product of a horizontal and a vertical segment, and
// clamped neighbourhoods are also product sets, so the 2-D extremum filter
// splits into two 1-D passes.
template <typename Pick>
GrayImage separable_extremum(const GrayImage& img, int side, Pick pick) {
    const int r = side / 2;
    const int w = img.width();
    const int h = img.height();
    GrayImage tmp(w, h);
    GrayImage out(w, h);

#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            const auto src = img.row(y);
            auto dst = tmp.row(y);
            for (int x = 0; x < w; ++x) {
                std::uint8_t v = src[x];
                const int lo = std::max(0, x - r);
                const int hi = std::min(w - 1, x + r);
                for (int i = lo; i <= hi; ++i) v = pick(v, src[i]);
                dst[x] = v;
            }
        }
#pragma omp for schedule(static)
        for (int y = 0; y < h; ++y) {
            const int lo = std::max(0, y - r);
            const int hi = std::min(h - 1, y + r);
            auto dst = out.row(y);
            std::copy(tmp.row(lo).begin(), tmp.row(lo).end(), dst.begin());
            for (int j = lo + 1; j <= hi; ++j) {
                const auto src = tmp.row(j);
                for (int x = 0; x < w; ++x) dst[x] = pick(dst[x], src[x]);
            }
        }
    }
    return out;
}

constexpr auto kMin = [](std::uint8_t a, std::uint8_t b) { return std::min(a, b); };
constexpr auto kMax = [](std::uint8_t a, std::uint8_t b) { return std::max(a, b); };

}  // namespace

GrayImage erode(const GrayImage& img, int side) {
    check_side(side);
    if (side == 1) return img;
    return separable_extremum(img, side, kMin);
}

GrayImage dilate(const GrayImage& img, int side) {
    check_side(side);
    if (side == 1) return img;
    return separable_extremum(img, side, kMax);
}

GrayImage morphological_opening(const GrayImage& img, int se_side) {
    check_side(se_side);
    if (se_side == 1) return img;
    return dilate(erode(img, se_side), se_side);
}

}  // namespace mriprep

#include <algorithm>
#include <array>
#include <string>

#include "mriprep/error.hpp"
#include "mriprep/preprocess.hpp"

namespace mriprep {

// Huang's running histogram: each row keeps a 256-bin histogram of the current
// window and slides it one column at a time. Rows are independent.
GrayImage median_filter(const GrayImage& img, int k) {
    if (k < 1 || k % 2 == 0) fail(ErrorCode::EvenKernel, "median kernel must be odd and >= 1, got " + std::to_string(k));
    if (k == 1) return img;

    const int r = k / 2;
    const int w = img.width();
    const int h = img.height();
    const int rank = (k * k) / 2;
    GrayImage out(w, h);

#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        std::array<int, 256> hist{};
        auto add_column = [&](int cx, int delta) {
            cx = std::clamp(cx, 0, w - 1);
            for (int dy = -r; dy <= r; ++dy) hist[img.at(cx, std::clamp(y + dy, 0, h - 1))] += delta;
        };
        for (int dx = -r; dx <= r; ++dx) add_column(dx, +1);

        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            if (x > 0) {
                add_column(x - r - 1, -1);
                add_column(x + r, +1);
            }
            int seen = 0;
            int v = 0;
            while (seen + hist[v] <= rank) seen += hist[v++];
            dst[x] = static_cast<std::uint8_t>(v);
        }
    }
    return out;
}

}  // namespace mriprep

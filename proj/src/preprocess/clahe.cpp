#include <algorithm>
#include <cmath>
#include <string>

#include "mriprep/error.hpp"
#include "mriprep/preprocess.hpp"

namespace mriprep {

namespace {

struct Tap {
    int lo;
    int hi;
    double frac;
};

// Tile i has its center at tile coordinate i; pixel centers sit at x + 0.5.
std::vector<Tap> tile_taps(int pixels, int tile_size, int tiles) {
    std::vector<Tap> taps(static_cast<std::size_t>(pixels));
    for (int x = 0; x < pixels; ++x) {
        const double g = (x + 0.5) / tile_size - 0.5;
        Tap t{0, 0, 0.0};
        if (g >= tiles - 1) {
            t = {tiles - 1, tiles - 1, 0.0};
        } else if (g > 0.0) {
            const int lo = static_cast<int>(std::floor(g));
            t = {lo, lo + 1, g - lo};
        }
        taps[static_cast<std::size_t>(x)] = t;
    }
    return taps;
}

}  // namespace

TileGrid TileGrid::for_image(const GrayImage& img, int tiles_x, int tiles_y) {
    if (tiles_x < 1 || tiles_y < 1) fail(ErrorCode::InvalidConfig, "CLAHE tile counts must be >= 1");
    if (tiles_x > img.width() || tiles_y > img.height()) {
        fail(ErrorCode::TileGridTooFine, "tile grid " + std::to_string(tiles_x) + "x" + std::to_string(tiles_y) +
                                             " exceeds image " + std::to_string(img.width()) + "x" +
                                             std::to_string(img.height()));
    }
    return {tiles_x, tiles_y, (img.width() + tiles_x - 1) / tiles_x, (img.height() + tiles_y - 1) / tiles_y};
}

int clahe_clip_ceiling(double clip, int tile_pixels) {
    const double raw = std::floor(clip * tile_pixels / kClaheBins + 0.5);
    return static_cast<int>(std::clamp(raw, 1.0, static_cast<double>(tile_pixels)));
}

ToneMapping clahe_mapping(std::array<std::uint32_t, kClaheBins> histogram, int ceiling) {
    const auto limit = static_cast<std::uint32_t>(std::max(ceiling, 1));
    std::uint64_t excess = 0;
    std::uint64_t total = 0;
    for (auto& bin : histogram) {
        total += bin;
        if (bin > limit) {
            excess += bin - limit;
            bin = limit;
        }
    }

    const auto batch = static_cast<std::uint32_t>(excess / kClaheBins);
    auto residual = static_cast<std::uint32_t>(excess % kClaheBins);
    for (auto& bin : histogram) bin += batch;
    if (residual > 0) {
        const std::uint32_t step = std::max<std::uint32_t>(kClaheBins / residual, 1);
        for (std::uint32_t i = 0; i < kClaheBins && residual > 0; i += step, --residual) ++histogram[i];
    }

    ToneMapping mapping{};
    if (total == 0) return mapping;
    std::uint64_t cum = 0;
    for (int v = 0; v < kClaheBins; ++v) {
        cum += histogram[static_cast<std::size_t>(v)];
        // round(255 * cum / total), half-up, in exact integer arithmetic
        mapping[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>((510 * cum + total) / (2 * total));
    }
    return mapping;
}

std::vector<ToneMapping> clahe_tile_mappings(const GrayImage& img, const PipelineConfig& cfg) {
    if (!(cfg.clahe_clip > 0.0) || !std::isfinite(cfg.clahe_clip)) {
        fail(ErrorCode::InvalidConfig, "CLAHE clip factor must be positive");
    }
    const TileGrid grid = TileGrid::for_image(img, cfg.clahe_tiles_x, cfg.clahe_tiles_y);
    const int ceiling = clahe_clip_ceiling(cfg.clahe_clip, grid.tile_pixels());
    std::vector<ToneMapping> mappings(static_cast<std::size_t>(grid.tiles_x) * grid.tiles_y);

#pragma omp parallel for collapse(2) schedule(static)
    for (int ty = 0; ty < grid.tiles_y; ++ty) {
        for (int tx = 0; tx < grid.tiles_x; ++tx) {
            std::array<std::uint32_t, kClaheBins> hist{};
            const int y0 = ty * grid.tile_height;
            const int x0 = tx * grid.tile_width;
            for (int y = y0; y < y0 + grid.tile_height; ++y) {
                const auto src = img.row(std::min(y, img.height() - 1));
                for (int x = x0; x < x0 + grid.tile_width; ++x) ++hist[src[std::min(x, img.width() - 1)]];
            }
            mappings[static_cast<std::size_t>(ty) * grid.tiles_x + tx] = clahe_mapping(hist, ceiling);
        }
    }
    return mappings;
}

GrayImage clahe(const GrayImage& img, const PipelineConfig& cfg) {
    const auto mappings = clahe_tile_mappings(img, cfg);
    const TileGrid grid = TileGrid::for_image(img, cfg.clahe_tiles_x, cfg.clahe_tiles_y);
    const auto xs = tile_taps(img.width(), grid.tile_width, grid.tiles_x);
    const auto ys = tile_taps(img.height(), grid.tile_height, grid.tiles_y);
    auto lut = [&](int tx, int ty) -> const ToneMapping& {
        return mappings[static_cast<std::size_t>(ty) * grid.tiles_x + tx];
    };

    GrayImage out(img.width(), img.height());
#pragma omp parallel for schedule(static)
    for (int y = 0; y < img.height(); ++y) {
        const Tap ty = ys[static_cast<std::size_t>(y)];
        const auto src = img.row(y);
        auto dst = out.row(y);
        for (int x = 0; x < img.width(); ++x) {
            const Tap tx = xs[static_cast<std::size_t>(x)];
            const std::uint8_t v = src[x];
            const double m00 = lut(tx.lo, ty.lo)[v];
            const double m01 = lut(tx.hi, ty.lo)[v];
            const double m10 = lut(tx.lo, ty.hi)[v];
            const double m11 = lut(tx.hi, ty.hi)[v];
            const double top = m00 + tx.frac * (m01 - m00);
            const double bottom = m10 + tx.frac * (m11 - m10);
            const double value = top + ty.frac * (bottom - top);
            dst[x] = static_cast<std::uint8_t>(std::clamp(std::floor(value + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

}  // namespace mriprep

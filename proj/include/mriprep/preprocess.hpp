#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mriprep/image.hpp"

namespace mriprep {

inline constexpr int kClaheBins = 256;

struct PipelineConfig {
    int median_kernel = 3;
    int opening_se_side = 3;
    bool clahe_enabled = true;
    int clahe_tiles_x = 8;
    int clahe_tiles_y = 8;
    double clahe_clip = 2.0;

    /// Throws InvalidConfig / EvenKernel / EvenStructuringElement.
    void validate() const;
};

/// Median of the k x k window, edge-replicated. k must be odd; k == 1 is the identity.
GrayImage median_filter(const GrayImage& img, int k);

/// Window minimum / maximum over a square, edge-replicated. side must be odd.
GrayImage erode(const GrayImage& img, int side);
GrayImage dilate(const GrayImage& img, int side);

/// Grayscale opening with a flat square structuring element (erode, then dilate).
GrayImage morphological_opening(const GrayImage& img, int se_side);

using ToneMapping = std::array<std::uint8_t, kClaheBins>;

/// Geometry of the CLAHE tile grid. The image is virtually extended by edge
/// replication on the right and bottom so that every tile has the same size.
struct TileGrid {
    int tiles_x;
    int tiles_y;
    int tile_width;
    int tile_height;

    static TileGrid for_image(const GrayImage& img, int tiles_x, int tiles_y);
    int tile_pixels() const noexcept { return tile_width * tile_height; }
};

/// Absolute clip ceiling: max(1, round(clip * tile_pixels / 256)).
int clahe_clip_ceiling(double clip, int tile_pixels);

/// Clips a tile histogram at `ceiling`, spreads the excess over all bins in a
/// single pass and returns m(v) = round(255 * cdf(v)).
ToneMapping clahe_mapping(std::array<std::uint32_t, kClaheBins> histogram, int ceiling);

/// Per-tile mappings in row-major tile order.
std::vector<ToneMapping> clahe_tile_mappings(const GrayImage& img, const PipelineConfig& cfg);

GrayImage clahe(const GrayImage& img, const PipelineConfig& cfg);

struct StageRecord {
    std::string name;
    std::uint64_t input_checksum;
    std::uint64_t output_checksum;
    std::chrono::nanoseconds elapsed;
};

using StageTrace = std::vector<StageRecord>;

enum class Stage { Median, Opening, Clahe };

/// Runs median -> opening -> CLAHE (if enabled). `stop_after` truncates the chain.
std::pair<GrayImage, StageTrace> run_pipeline(const GrayImage& img, const PipelineConfig& cfg,
                                              Stage stop_after = Stage::Clahe);

std::string_view stage_name(Stage stage) noexcept;
Stage parse_stage(std::string_view name);

}  // namespace mriprep

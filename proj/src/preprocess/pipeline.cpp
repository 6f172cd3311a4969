#include <cmath>
#include <string>

#include "mriprep/error.hpp"
#include "mriprep/preprocess.hpp"

namespace mriprep {

void PipelineConfig::validate() const {
    if (median_kernel < 1 || median_kernel % 2 == 0) {
        fail(ErrorCode::EvenKernel, "median kernel must be odd and >= 1, got " + std::to_string(median_kernel));
    }
    if (opening_se_side < 1 || opening_se_side % 2 == 0) {
        fail(ErrorCode::EvenStructuringElement,
             "structuring element side must be odd and >= 1, got " + std::to_string(opening_se_side));
    }
    if (clahe_tiles_x < 1 || clahe_tiles_y < 1) fail(ErrorCode::InvalidConfig, "CLAHE tile counts must be >= 1");
    if (!(clahe_clip > 0.0) || !std::isfinite(clahe_clip)) fail(ErrorCode::InvalidConfig, "CLAHE clip factor must be positive");
}

std::string_view stage_name(Stage stage) noexcept {
    switch (stage) {
        case Stage::Median: return "median";
        case Stage::Opening: return "opening";
        case Stage::Clahe: return "clahe";
    }
    return "?";
}

Stage parse_stage(std::string_view name) {
    if (name == "median") return Stage::Median;
    if (name == "opening") return Stage::Opening;
    if (name == "clahe" || name == "final") return Stage::Clahe;
    fail(ErrorCode::InvalidConfig, "unknown stage '" + std::string(name) + "'");
}

std::pair<GrayImage, StageTrace> run_pipeline(const GrayImage& img, const PipelineConfig& cfg, Stage stop_after) {
    cfg.validate();
    StageTrace trace;
    GrayImage current = img;

    auto run = [&](Stage stage, auto&& op) {
        const auto start = std::chrono::steady_clock::now();
        const std::uint64_t in_sum = pixel_checksum(current);
        current = op(current);
        trace.push_back({std::string(stage_name(stage)), in_sum, pixel_checksum(current),
                         std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)});
    };

    run(Stage::Median, [&](const GrayImage& x) { return median_filter(x, cfg.median_kernel); });
    if (stop_after == Stage::Median) return {std::move(current), std::move(trace)};
    run(Stage::Opening, [&](const GrayImage& x) { return morphological_opening(x, cfg.opening_se_side); });
    if (stop_after == Stage::Opening) return {std::move(current), std::move(trace)};
    if (cfg.clahe_enabled) run(Stage::Clahe, [&](const GrayImage& x) { return clahe(x, cfg); });
    return {std::move(current), std::move(trace)};
}

}  // namespace mriprep

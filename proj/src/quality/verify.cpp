#include <charconv>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>

#include "mriprep/error.hpp"
#include "mriprep/format.hpp"
#include "mriprep/quality.hpp"

namespace mriprep {

std::vector<QualityReport> verify_batch(const std::vector<QualityPair>& pairs) {
    std::vector<QualityReport> reports(pairs.size());
    std::vector<std::optional<Error>> errors(pairs.size());
    const auto n = static_cast<std::ptrdiff_t>(pairs.size());

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto& p = pairs[static_cast<std::size_t>(i)];
        try {
            const Fidelity f = fidelity(p.reference, p.processed);
            reports[static_cast<std::size_t>(i)] = {p.image_id, f.mse, f.rmse, f.psnr_db, ssim(p.reference, p.processed)};
        } catch (const Error& e) {
            errors[static_cast<std::size_t>(i)].emplace(e.code(), p.image_id + ": " + e.detail());
        }
    }
    for (auto& e : errors) {
        if (e) throw *e;
    }
    return reports;
}

std::string quality_csv(const std::vector<QualityReport>& reports) {
    std::ostringstream out;
    out << "image_id,mse,rmse,psnr_db,ssim\n";
    for (const auto& r : reports) {
        out << csv_escape(r.image_id) << ',' << format_real(r.mse) << ',' << format_real(r.rmse) << ','
            << format_real(r.psnr_db) << ',' << format_real(r.ssim) << '\n';
    }
    return out.str();
}

}  // namespace mriprep

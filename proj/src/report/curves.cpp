#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mriprep/error.hpp"
#include "mriprep/report.hpp"

namespace mriprep {

namespace {

constexpr double kWidth = 900;
constexpr double kHeight = 540;
constexpr double kLeft = 80;
constexpr double kRight = 220;  // legend column
constexpr double kTop = 50;
constexpr double kBottom = 70;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) { return format_fixed(v, 2); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// 1-2-5 step giving at most ~8 intervals over the span.
double nice_step(double span) {
    if (span <= 0) return 1.0;
    const double raw = span / 8.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

std::string tick_label(double v, double step) {
    const int decimals = step >= 1.0 ? 0 : static_cast<int>(std::ceil(-std::log10(step) - 1e-9));
    return format_fixed(v, decimals);
}

struct Series {
    std::string model;
    std::vector<std::pair<int, double>> train;
    std::vector<std::pair<int, double>> val;
};

}  // namespace

CurveDocument render_curves(const std::vector<EpochLogEntry>& entries, CurveKind kind) {
    if (entries.empty()) fail(ErrorCode::EmptyInput, "no epoch log entries to plot");
    const bool acc = kind == CurveKind::Accuracy;
    const std::string metric = acc ? "acc" : "loss";

    std::vector<Series> series;
    std::ostringstream csv;
    csv << "model,epoch,train_" << metric << ",val_" << metric << '\n';
    for (const auto& e : entries) {
        auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.model == e.model; });
        if (it == series.end()) it = series.insert(series.end(), Series{e.model, {}, {}});
        const double tr = acc ? e.train_acc : e.train_loss;
        const double va = acc ? e.val_acc : e.val_loss;
        it->train.emplace_back(e.epoch, tr);
        it->val.emplace_back(e.epoch, va);
        csv << csv_escape(e.model) << ',' << e.epoch << ',' << format_real(tr) << ',' << format_real(va) << '\n';
    }

    int x_min = entries.front().epoch;
    int x_max = x_min;
    double y_min = acc ? entries.front().train_acc : entries.front().train_loss;
    double y_max = y_min;
    for (const auto& s : series) {
        for (const auto* pts : {&s.train, &s.val}) {
            for (const auto& [x, y] : *pts) {
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    // Degenerate spans still get a drawable domain.
    const double x_lo = x_min == x_max ? x_min - 1.0 : x_min;
    const double x_hi = x_min == x_max ? x_max + 1.0 : x_max;
    double y_pad = (y_max - y_min) * 0.05;
    if (y_pad == 0) y_pad = std::max(std::abs(y_max) * 0.05, 0.05);
    double y_lo = y_min - y_pad;
    double y_hi = y_max + y_pad;
    if (acc) {
        y_lo = std::max(y_lo, 0.0);
        y_hi = std::min(y_hi, 1.0);
        if (y_hi <= y_lo) y_hi = y_lo + 0.05;
    } else {
        y_lo = std::max(y_lo, 0.0);
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    std::ostringstream svg;
    const std::string title = acc ? "Accuracy" : "Loss";
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << title
        << " curve over " << (x_max - x_min + 1) << " epochs</text>\n";

    svg << "<g id=\"x-axis\" data-min=\"" << x_min << "\" data-max=\"" << x_max << "\">\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    const double x_step = std::max(1.0, nice_step(x_hi - x_lo));
    std::vector<double> x_ticks;
    for (double t = std::ceil(x_lo / x_step) * x_step; t <= x_hi + 1e-9; t += x_step) x_ticks.push_back(t);
    if (x_ticks.empty() || x_ticks.front() - x_min > 1e-9) x_ticks.insert(x_ticks.begin(), x_min);
    if (x_max - x_ticks.back() > 1e-9) x_ticks.push_back(x_max);
    for (double t : x_ticks) {
        if (t < x_lo - 1e-9 || t > x_hi + 1e-9) continue;
        svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(px(t)) << "\" y2=\""
            << num(kTop + plot_h + 5) << "\" stroke=\"black\"/><text x=\"" << num(px(t)) << "\" y=\""
            << num(kTop + plot_h + 20) << "\" text-anchor=\"middle\">" << tick_label(t, 1.0) << "</text>\n";
    }
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 20)
        << "\" text-anchor=\"middle\">Epoch</text>\n</g>\n";

    svg << "<g id=\"y-axis\" data-min=\"" << format_real(y_lo) << "\" data-max=\"" << format_real(y_hi) << "\">\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(kTop + plot_h) << "\" stroke=\"black\"/>\n";
    const double y_step = nice_step(y_hi - y_lo);
    for (double t = std::ceil(y_lo / y_step - 1e-9) * y_step; t <= y_hi + 1e-9; t += y_step) {
        svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + plot_w)
            << "\" y2=\"" << num(py(t)) << "\" stroke=\"#dddddd\"/><text x=\"" << num(kLeft - 8) << "\" y=\""
            << num(py(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t, y_step) << "</text>\n";
    }
    svg << "<text transform=\"translate(22 " << num(kTop + plot_h / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
        << title << "</text>\n</g>\n";

    svg << "<g id=\"series\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        for (int which = 0; which < 2; ++which) {
            const auto& pts = which == 0 ? series[i].train : series[i].val;
            const std::string name = series[i].model + (which == 0 ? " train" : " validation");
            svg << "<polyline data-series=\"" << xml_escape(name) << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"" << (which == 1 ? " stroke-dasharray=\"6 3\"" : "") << " points=\"";
            for (std::size_t p = 0; p < pts.size(); ++p) {
                svg << (p ? " " : "") << num(px(pts[p].first)) << ',' << num(py(pts[p].second));
            }
            svg << "\"/>\n";
            if (pts.size() == 1) {
                svg << "<circle cx=\"" << num(px(pts[0].first)) << "\" cy=\"" << num(py(pts[0].second))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
            }
        }
    }
    svg << "</g>\n<g id=\"legend\">\n";
    double ly = kTop + 10;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % std::size(kPalette)];
        for (int which = 0; which < 2; ++which) {
            const double lx = kLeft + plot_w + 20;
            svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 30) << "\" y2=\""
                << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                << (which == 1 ? " stroke-dasharray=\"6 3\"" : "") << "/><text x=\"" << num(lx + 36) << "\" y=\""
                << num(ly + 4) << "\">" << xml_escape(series[i].model) << (which == 0 ? " train" : " validation")
                << "</text>\n";
            ly += 18;
        }
    }
    svg << "</g>\n</svg>\n";
    return {svg.str(), csv.str()};
}

std::vector<CurvePoint> parse_curve_csv(std::string_view csv) {
    std::vector<CurvePoint> out;
    std::istringstream in{std::string(csv)};
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        const auto f = csv_split(line);
        if (f.size() != 4) fail(ErrorCode::SchemaViolation, "curve CSV row needs 4 fields: " + line);
        int epoch = 0;
        auto [ptr, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), epoch);
        if (ec != std::errc{} || ptr != f[1].data() + f[1].size()) fail(ErrorCode::SchemaViolation, "bad epoch: " + f[1]);
        out.push_back({f[0], epoch, parse_real(f[2]), parse_real(f[3])});
    }
    return out;
}

}  // namespace mriprep

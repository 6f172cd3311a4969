#include "mriprep/reference/reference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mriprep::reference {

namespace {

std::vector<std::uint8_t> window(const GrayImage& img, int cx, int cy, int side) {
    const int r = side / 2;
    std::vector<std::uint8_t> values;
    values.reserve(static_cast<std::size_t>(side) * side);
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) values.push_back(img.clamped(cx + dx, cy + dy));
    }
    return values;
}

template <typename Fn>
GrayImage per_pixel(const GrayImage& img, Fn&& fn) {
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) out.at(x, y) = fn(x, y);
    }
    return out;
}

}  // namespace

GrayImage median_filter(const GrayImage& img, int k) {
    return per_pixel(img, [&](int x, int y) {
        auto w = window(img, x, y, k);
        std::sort(w.begin(), w.end());
        return w[w.size() / 2];
    });
}

GrayImage erode(const GrayImage& img, int side) {
    return per_pixel(img, [&](int x, int y) {
        const auto w = window(img, x, y, side);
        return *std::min_element(w.begin(), w.end());
    });
}

GrayImage dilate(const GrayImage& img, int side) {
    return per_pixel(img, [&](int x, int y) {
        const auto w = window(img, x, y, side);
        return *std::max_element(w.begin(), w.end());
    });
}

GrayImage opening(const GrayImage& img, int side) { return reference::dilate(reference::erode(img, side), side); }

std::vector<ToneMapping> clahe_tile_mappings(const GrayImage& img, int tiles_x, int tiles_y, double clip) {
    const int tw = (img.width() + tiles_x - 1) / tiles_x;
    const int th = (img.height() + tiles_y - 1) / tiles_y;
    const long pixels = static_cast<long>(tw) * th;
    const long ceiling = std::max(1L, std::lround(clip * static_cast<double>(pixels) / 256.0));

    std::vector<ToneMapping> out;
    for (int ty = 0; ty < tiles_y; ++ty) {
        for (int tx = 0; tx < tiles_x; ++tx) {
            std::array<long, 256> hist{};
            for (int py = ty * th; py < (ty + 1) * th; ++py) {
                for (int px = tx * tw; px < (tx + 1) * tw; ++px) ++hist[img.clamped(px, py)];
            }
            long excess = 0;
            for (auto& h : hist) {
                if (h > ceiling) {
                    excess += h - ceiling;
                    h = ceiling;
                }
            }
            for (auto& h : hist) h += excess / 256;
            long residual = excess % 256;
            if (residual > 0) {
                const long step = std::max(256 / residual, 1L);
                for (long i = 0; i < 256 && residual > 0; i += step, --residual) ++hist[static_cast<std::size_t>(i)];
            }
            ToneMapping m{};
            long cum = 0;
            for (int v = 0; v < 256; ++v) {
                cum += hist[static_cast<std::size_t>(v)];
                m[static_cast<std::size_t>(v)] =
                    static_cast<std::uint8_t>(std::floor(255.0 * static_cast<double>(cum) / static_cast<double>(pixels) + 0.5));
            }
            out.push_back(m);
        }
    }
    return out;
}

GrayImage clahe(const GrayImage& img, int tiles_x, int tiles_y, double clip) {
    const auto maps = reference::clahe_tile_mappings(img, tiles_x, tiles_y, clip);
    const int tw = (img.width() + tiles_x - 1) / tiles_x;
    const int th = (img.height() + tiles_y - 1) / tiles_y;
    auto locate = [](int p, int size, int tiles, int& lo, int& hi, double& f) {
        const double g = std::clamp((p + 0.5) / size - 0.5, 0.0, static_cast<double>(tiles - 1));
        lo = static_cast<int>(std::floor(g));
        hi = std::min(lo + 1, tiles - 1);
        f = g - lo;
    };
    return per_pixel(img, [&](int x, int y) {
        int x0, x1, y0, y1;
        double fx, fy;
        locate(x, tw, tiles_x, x0, x1, fx);
        locate(y, th, tiles_y, y0, y1, fy);
        const std::uint8_t v = img.at(x, y);
        const double a = maps[static_cast<std::size_t>(y0 * tiles_x + x0)][v];
        const double b = maps[static_cast<std::size_t>(y0 * tiles_x + x1)][v];
        const double c = maps[static_cast<std::size_t>(y1 * tiles_x + x0)][v];
        const double d = maps[static_cast<std::size_t>(y1 * tiles_x + x1)][v];
        const double top = a + fx * (b - a);
        const double bottom = c + fx * (d - c);
        return static_cast<std::uint8_t>(std::floor(top + fy * (bottom - top) + 0.5));
    });
}

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
    GrayImage out(width, height);
    const double sx = static_cast<double>(img.width()) / width;
    const double sy = static_cast<double>(img.height()) / height;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double gx = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
            const double gy = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
            const int x0 = static_cast<int>(gx);
            const int y0 = static_cast<int>(gy);
            const double fx = gx - x0;
            const double fy = gy - y0;
            const double p00 = img.clamped(x0, y0);
            const double p10 = img.clamped(x0 + 1, y0);
            const double p01 = img.clamped(x0, y0 + 1);
            const double p11 = img.clamped(x0 + 1, y0 + 1);
            const double top = p00 + fx * (p10 - p00);
            const double bottom = p01 + fx * (p11 - p01);
            const double v = top + fy * (bottom - top);
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        }
    }
    return out;
}

double mse(const GrayImage& a, const GrayImage& b) {
    double sum = 0.0;
    for (int y = 0; y < a.height(); ++y) {
        for (int x = 0; x < a.width(); ++x) {
            const double d = static_cast<double>(a.at(x, y)) - b.at(x, y);
            sum += d * d;
        }
    }
    return sum / (static_cast<double>(a.width()) * a.height());
}

double ssim(const GrayImage& a, const GrayImage& b) {
    constexpr int win = 11;
    constexpr int r = win / 2;
    constexpr double sigma = 1.5;
    constexpr double c1 = (0.01 * 255) * (0.01 * 255);
    constexpr double c2 = (0.03 * 255) * (0.03 * 255);
    double weights[win][win];
    double wsum = 0.0;
    for (int j = -r; j <= r; ++j) {
        for (int i = -r; i <= r; ++i) {
            weights[j + r][i + r] = std::exp(-(i * i + j * j) / (2 * sigma * sigma));
            wsum += weights[j + r][i + r];
        }
    }
    for (auto& row : weights) {
        for (auto& w : row) w /= wsum;
    }

    double total = 0.0;
    long count = 0;
    for (int y0 = 0; y0 + win <= a.height(); ++y0) {
        for (int x0 = 0; x0 + win <= a.width(); ++x0) {
            double ma = 0, mb = 0;
            for (int j = 0; j < win; ++j) {
                for (int i = 0; i < win; ++i) {
                    ma += weights[j][i] * a.at(x0 + i, y0 + j);
                    mb += weights[j][i] * b.at(x0 + i, y0 + j);
                }
            }
            // second pass about the mean, no E[x^2] - mu^2 shortcut
            double va = 0, vb = 0, cov = 0;
            for (int j = 0; j < win; ++j) {
                for (int i = 0; i < win; ++i) {
                    const double da = a.at(x0 + i, y0 + j) - ma;
                    const double db = b.at(x0 + i, y0 + j) - mb;
                    va += weights[j][i] * da * da;
                    vb += weights[j][i] * db * db;
                    cov += weights[j][i] * da * db;
                }
            }
            total += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace mriprep::reference

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fastbf/image.hpp"

namespace fastbf {

inline constexpr double kPsnrCap = 120.0;

struct MetricReport {
    double psnr = 0.0;
    double ssim = 0.0;
};

inline double psnr(const Image& a, const Image& b) {
    require_same_size(a, b);
    double se = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.samples()[i] - b.samples()[i];
        se += d * d;
    }
    const double mse = se / static_cast<double>(a.size());
    if (mse < 1e-12) return kPsnrCap;
    return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

namespace detail {

inline constexpr int kSsimRadius = 5;

inline std::array<double, 2 * kSsimRadius + 1> ssim_window() {
    std::array<double, 2 * kSsimRadius + 1> w{};
    double sum = 0.0;
    for (int i = -kSsimRadius; i <= kSsimRadius; ++i) {
        w[i + kSsimRadius] = std::exp(-(i * i) / (2.0 * 1.5 * 1.5));
        sum += w[i + kSsimRadius];
    }
    for (double& v : w) v /= sum;
    return w;
}

/// Separable Gaussian-weighted means over every full 11x11 window.
inline std::vector<double> window_means(const std::vector<double>& src, int w, int h) {
    const auto g = ssim_window();
    const int side = 2 * kSsimRadius + 1, ow = w - side + 1, oh = h - side + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < side; ++i) s += g[i] * src[static_cast<std::size_t>(y) * w + x + i];
            rows[static_cast<std::size_t>(y) * ow + x] = s;
        }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < side; ++i) s += g[i] * rows[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = s;
        }
    return out;
}

}  // namespace detail

/// Mean local SSIM, 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03, L = 255.
inline double ssim(const Image& a, const Image& b) {
    require_same_size(a, b);
    const int w = a.width(), h = a.height();
    if (w < 11 || h < 11) throw std::invalid_argument("ssim needs images of at least 11x11");
    const std::size_t n = a.size();
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = a.samples()[i], y = b.samples()[i];
        aa[i] = x * x;
        bb[i] = y * y;
        ab[i] = x * y;
    }
    const auto mx = detail::window_means(a.samples(), w, h);
    const auto my = detail::window_means(b.samples(), w, h);
    const auto mxx = detail::window_means(aa, w, h);
    const auto myy = detail::window_means(bb, w, h);
    const auto mxy = detail::window_means(ab, w, h);
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0), c2 = (0.03 * 255.0) * (0.03 * 255.0);
    double total = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
        const double vx = mxx[i] - mx[i] * mx[i];
        const double vy = myy[i] - my[i] * my[i];
        const double cxy = mxy[i] - mx[i] * my[i];
        total += ((2.0 * mx[i] * my[i] + c1) * (2.0 * cxy + c2)) /
                 ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mx.size());
}

inline MetricReport compare_images(const Image& a, const Image& b) { return {psnr(a, b), ssim(a, b)}; }

}  // namespace fastbf

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fastbf/image.hpp"
#include "fastbf/kernel.hpp"
#include "fastbf/parallel.hpp"

namespace fastbf {

namespace detail {

inline bool integer_levels(const Image& image) {
    for (double v : image.samples())
        if (v < 0.0 || v > 255.0 || v != std::floor(v)) return false;
    return true;
}

}  // namespace detail

/// Direct bilateral filter over the clipped (2 rho + 1)^2 window.
/// spatial(dx, dy) and range(t) give the weights; output is clamped to the window's input range.
template <class Spatial, class Range>
    requires std::invocable<Spatial&, int, int> && std::invocable<Range&, double>
Image brute_force_bf(const Image& image, Spatial&& spatial, Range&& range, int rho, unsigned threads = 1) {
    if (rho < 0) throw std::invalid_argument("window radius must be non-negative");
    const int w = image.width(), h = image.height(), side = 2 * rho + 1;
    std::vector<double> ws(static_cast<std::size_t>(side) * side);
    for (int dy = -rho; dy <= rho; ++dy)
        for (int dx = -rho; dx <= rho; ++dx) ws[(dy + rho) * side + (dx + rho)] = spatial(dx, dy);

    Image out(w, h);
    parallel_chunks(static_cast<std::size_t>(h), resolve_threads(threads), [&](unsigned, std::size_t b, std::size_t e) {
        for (int y = static_cast<int>(b); y < static_cast<int>(e); ++y) {
            for (int x = 0; x < w; ++x) {
                const double ix = image(x, y);
                double num = 0.0, den = 0.0, lo = ix, hi = ix;
                const int y0 = std::max(0, y - rho), y1 = std::min(h - 1, y + rho);
                const int x0 = std::max(0, x - rho), x1 = std::min(w - 1, x + rho);
                for (int yy = y0; yy <= y1; ++yy) {
                    const double* wrow = ws.data() + (yy - y + rho) * side + (x0 - x + rho);
                    for (int xx = x0; xx <= x1; ++xx) {
                        const double iy = image(xx, yy);
                        const double wgt = wrow[xx - x0] * range(ix - iy);
                        num += wgt * iy;
                        den += wgt;
                        lo = std::min(lo, iy);
                        hi = std::max(hi, iy);
                    }
                }
                out(x, y) = den > 0.0 ? std::clamp(num / den, lo, hi) : ix;
            }
        }
    });
    return out;
}

/// Weights K_s(|x - y|) K_r(I(x) - I(y)) from untruncated kernels.
inline Image brute_force_bf(const Image& image, const KernelSpec& spatial, const KernelSpec& range, int rho,
                            unsigned threads = 1) {
    auto ks = [&](int dx, int dy) { return spatial.value(std::hypot(static_cast<double>(dx), static_cast<double>(dy))); };
    if (detail::integer_levels(image)) {
        // integer differences only: tabulate K_r(t) for t in [-255, 255]
        std::array<double, 2 * kLevels - 1> table{};
        for (int t = -(kLevels - 1); t <= kLevels - 1; ++t) table[t + kLevels - 1] = range.value(static_cast<double>(t));
        return brute_force_bf(
            image, ks, [&](double t) { return table[static_cast<int>(t) + kLevels - 1]; }, rho, threads);
    }
    return brute_force_bf(image, ks, [&](double t) { return range.value(t); }, rho, threads);
}

}  // namespace fastbf

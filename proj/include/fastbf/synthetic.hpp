#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "fastbf/image.hpp"

namespace fastbf {

/// Uniform in [0, 1) from the raw 64-bit engine output, identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seeded test image: diagonal gradient, a vertical step, a dark disk, uniform noise; integer levels.
inline Image synthetic_image(int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double step_at = width * (0.3 + 0.4 * unit_uniform(rng));
    const double cx = 0.5 * width, cy = 0.4 * height, radius = 0.2 * width;
    Image img(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double v = 40.0 + 150.0 * (x + y) / static_cast<double>(width + height);
            if (x > step_at) v += 60.0;
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy < radius * radius) v -= 50.0;
            v += -20.0 + 40.0 * unit_uniform(rng);
            img(x, y) = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
        }
    return img;
}

}  // namespace fastbf

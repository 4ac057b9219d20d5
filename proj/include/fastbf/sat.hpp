#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fastbf/image.hpp"

namespace fastbf {

/// Half-open pixel region (x0, x1] x (y0, y1].
struct Rect {
    int x0 = 0;
    int x1 = 0;
    int y0 = 0;
    int y1 = 0;
};

/// Rect x z-interval (z0, z1].
struct Cube {
    Rect rect;
    int z0 = 0;
    int z1 = 0;
};

/// Summed-area table with a zero guard row and column.
class Sat2D {
public:
    Sat2D() = default;
    Sat2D(int width, int height)
        : width_(width), height_(height),
          table_(static_cast<std::size_t>(width + 1) * (height + 1), 0.0) {}

    int width() const { return width_; }
    int height() const { return height_; }

    /// Entry at guard-shifted indices, i.e. sum over x' < xi, y' < yi.
    double at(int xi, int yi) const { return table_[static_cast<std::size_t>(yi) * (width_ + 1) + xi]; }
    double& at(int xi, int yi) { return table_[static_cast<std::size_t>(yi) * (width_ + 1) + xi]; }

    const std::vector<double>& table() const { return table_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> table_;
};

template <class Source>
Sat2D build_sat_2d(int width, int height, Source&& source) {
    if (width < 1 || height < 1) throw std::invalid_argument("empty SAT source");
    Sat2D s(width, height);
    std::vector<double> column(static_cast<std::size_t>(width), 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            column[x] += source(x, y);
            s.at(x + 1, y + 1) = s.at(x, y + 1) + column[x];
        }
    }
    return s;
}

inline Sat2D build_sat_2d(const Image& image) {
    return build_sat_2d(image.width(), image.height(), [&](int x, int y) { return image(x, y); });
}

/// Clamps r into the image and returns the enclosed sum; empty regions give 0.
inline double region_sum_2d(const Sat2D& sat, const Rect& r) {
    const int x0 = std::clamp(r.x0, -1, sat.width() - 1) + 1;
    const int x1 = std::clamp(r.x1, -1, sat.width() - 1) + 1;
    const int y0 = std::clamp(r.y0, -1, sat.height() - 1) + 1;
    const int y1 = std::clamp(r.y1, -1, sat.height() - 1) + 1;
    if (x1 <= x0 || y1 <= y0) return 0.0;
    return sat.at(x1, y1) - sat.at(x1, y0) - sat.at(x0, y1) + sat.at(x0, y0);
}

using LevelVector = std::array<double, kLevels>;

/// out[z] = sum of values over [z - halfwidth, z + halfwidth] clipped to [0, 255].
inline LevelVector sliding_sum_1d(const LevelVector& values, int halfwidth) {
    if (halfwidth < 0) throw std::invalid_argument("negative halfwidth");
    LevelVector out{};
    double acc = 0.0;
    const int h = std::min(halfwidth, kLevels - 1);
    for (int z = 0; z <= h; ++z) acc += values[z];
    for (int z = 0; z < kLevels; ++z) {
        out[z] = acc;
        const int enter = z + h + 1;
        const int leave = z - h;
        if (enter < kLevels) acc += values[enter];
        if (leave >= 0) acc -= values[leave];
    }
    return out;
}

/// Sum over z in (z0, z1] of region sums, with sat_of(z) returning the slice SAT.
template <class SliceSat>
double box_sum_3d(SliceSat&& sat_of, int depth, const Cube& c) {
    const int z0 = std::clamp(c.z0, -1, depth - 1);
    const int z1 = std::clamp(c.z1, -1, depth - 1);
    double acc = 0.0;
    for (int z = z0 + 1; z <= z1; ++z) acc += region_sum_2d(sat_of(z), c.rect);
    return acc;
}

inline double box_sum_3d(const std::vector<Sat2D>& slices, const Cube& c) {
    return box_sum_3d([&](int z) -> const Sat2D& { return slices[z]; },
                      static_cast<int>(slices.size()), c);
}

/// Interleaved multi-channel SAT over a W x H grid, reused across builds.
class MultiSat2D {
public:
    MultiSat2D(int width, int height, int channels)
        : width_(width), height_(height), channels_(channels),
          table_(static_cast<std::size_t>(width + 1) * (height + 1) * channels, 0.0),
          row_(static_cast<std::size_t>(channels), 0.0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }

    /// Rebuilds from a row-major interleaved source of W*H*channels values.
    void build(const double* source) {
        const std::size_t c = static_cast<std::size_t>(channels_);
        const std::size_t stride = static_cast<std::size_t>(width_ + 1) * c;
        for (int y = 0; y < height_; ++y) {
            std::fill(row_.begin(), row_.end(), 0.0);
            const double* src = source + static_cast<std::size_t>(y) * width_ * c;
            const double* above = table_.data() + static_cast<std::size_t>(y) * stride + c;
            double* dst = table_.data() + static_cast<std::size_t>(y + 1) * stride + c;
            for (int x = 0; x < width_; ++x) {
                for (std::size_t k = 0; k < c; ++k) {
                    row_[k] += src[k];
                    dst[k] = above[k] + row_[k];
                }
                src += c;
                above += c;
                dst += c;
            }
        }
    }

    /// out[ch] += weight * region sum of channel ch over r (clamped).
    void add_region_sums(const Rect& r, double weight, double* out) const {
        const int x0 = std::clamp(r.x0, -1, width_ - 1) + 1;
        const int x1 = std::clamp(r.x1, -1, width_ - 1) + 1;
        const int y0 = std::clamp(r.y0, -1, height_ - 1) + 1;
        const int y1 = std::clamp(r.y1, -1, height_ - 1) + 1;
        if (x1 <= x0 || y1 <= y0) return;
        const double* a = entry(x1, y1);
        const double* b = entry(x1, y0);
        const double* d = entry(x0, y1);
        const double* e = entry(x0, y0);
        for (int k = 0; k < channels_; ++k) out[k] += weight * (a[k] - b[k] - d[k] + e[k]);
    }

    double region_sum(const Rect& r, int channel) const {
        const int x0 = std::clamp(r.x0, -1, width_ - 1) + 1;
        const int x1 = std::clamp(r.x1, -1, width_ - 1) + 1;
        const int y0 = std::clamp(r.y0, -1, height_ - 1) + 1;
        const int y1 = std::clamp(r.y1, -1, height_ - 1) + 1;
        if (x1 <= x0 || y1 <= y0) return 0.0;
        return entry(x1, y1)[channel] - entry(x1, y0)[channel] - entry(x0, y1)[channel] +
               entry(x0, y0)[channel];
    }

private:
    const double* entry(int xi, int yi) const {
        return table_.data() + (static_cast<std::size_t>(yi) * (width_ + 1) + xi) * channels_;
    }

    int width_;
    int height_;
    int channels_;
    std::vector<double> table_;
    std::vector<double> row_;
};

}  // namespace fastbf

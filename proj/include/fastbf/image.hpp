#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fastbf {

struct PixelCoord {
    int x = 0;
    int y = 0;
};

/// Grayscale image of real intensities, row-major, nominal range [0, 255].
class Image {
public:
    Image() = default;

    Image(int width, int height, double fill = 0.0)
        : width_(width), height_(height) {
        check_dims(width, height);
        data_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    Image(int width, int height, std::vector<double> samples)
        : width_(width), height_(height), data_(std::move(samples)) {
        check_dims(width, height);
        if (data_.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("sample count does not match width*height");
        for (double v : data_)
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double operator()(int x, int y) const { return data_[index(x, y)]; }
    double& operator()(int x, int y) { return data_[index(x, y)]; }
    double operator()(PixelCoord p) const { return (*this)(p.x, p.y); }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }
    bool contains(PixelCoord p) const {
        return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
    }

    const std::vector<double>& samples() const { return data_; }
    std::vector<double>& samples() { return data_; }
    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }

    bool operator==(const Image& o) const {
        return width_ == o.width_ && height_ == o.height_ && data_ == o.data_;
    }

private:
    static void check_dims(int w, int h) {
        if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be positive");
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

inline constexpr int kLevels = 256;

/// Rounds half-up, then clamps to [0, 255].
inline int quantize_intensity(double v) {
    double r = std::floor(v + 0.5);
    if (r < 0.0) return 0;
    if (r > 255.0) return 255;
    return static_cast<int>(r);
}

inline void require_same_size(const Image& a, const Image& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.width()) + "x" +
                                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                                    "x" + std::to_string(b.height()));
}

}  // namespace fastbf

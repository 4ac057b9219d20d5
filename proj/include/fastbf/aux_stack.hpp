#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastbf/image.hpp"
#include "fastbf/trig.hpp"

namespace fastbf {

/// (cos, sin) of the range phase at the 256 integer levels, per frequency.
class IntensityLut {
public:
    IntensityLut() = default;
    IntensityLut(double T_r, std::vector<int> frequencies) : T_r_(T_r), ks_(std::move(frequencies)) {
        cos_.resize(ks_.size());
        sin_.resize(ks_.size());
        for (std::size_t i = 0; i < ks_.size(); ++i)
            for (int v = 0; v < kLevels; ++v) {
                const double ph = range_phase(ks_[i], static_cast<double>(v), T_r_);
                cos_[i][v] = std::cos(ph);
                sin_[i][v] = std::sin(ph);
            }
    }

    double T_r() const { return T_r_; }
    const std::vector<int>& frequencies() const { return ks_; }

    /// Slot of frequency k, or -1.
    int slot(int k) const {
        for (std::size_t i = 0; i < ks_.size(); ++i)
            if (ks_[i] == k) return static_cast<int>(i);
        return -1;
    }
    double cos_at(int slot, int v) const { return cos_[slot][v]; }
    double sin_at(int slot, int v) const { return sin_[slot][v]; }

private:
    double T_r_ = 0.0;
    std::vector<int> ks_;
    std::vector<std::array<double, kLevels>> cos_, sin_;
};

inline IntensityLut build_intensity_lut(const RangePlan& plan) {
    std::vector<int> ks;
    for (const auto& t : plan.terms) ks.push_back(t.k);
    return IntensityLut(plan.T_r, ks);
}

/// Sparse form of the per-frequency promoted stacks: each pixel y carries its level
/// q(y) = quantize(I(y)) and the factors g_k^c(y), g_k^s(y). The dense stacks are
/// F_c(y, z) = g_k^c(y) I(y) [z = q(y)], F_s likewise, W_c(y, z) = g_k^c(y) [z = q(y)], W_s likewise.
class AuxStack {
public:
    int width() const { return width_; }
    int height() const { return height_; }
    double T_r() const { return T_r_; }
    const std::vector<int>& frequencies() const { return ks_; }
    const std::vector<std::uint8_t>& levels() const { return level_; }
    const std::vector<double>& intensities() const { return intensity_; }

    int slot(int k) const {
        for (std::size_t i = 0; i < ks_.size(); ++i)
            if (ks_[i] == k) return static_cast<int>(i);
        return -1;
    }
    const std::vector<double>& g_cos(int slot) const { return cos_[slot]; }
    const std::vector<double>& g_sin(int slot) const { return sin_[slot]; }

    /// Pixel indices whose level is z.
    const std::uint32_t* bucket_begin(int z) const { return bucket_pixels_.data() + bucket_start_[z]; }
    const std::uint32_t* bucket_end(int z) const { return bucket_pixels_.data() + bucket_start_[z + 1]; }
    std::size_t bucket_size(int z) const { return bucket_start_[z + 1] - bucket_start_[z]; }

    enum class Stack { F_c, F_s, W_c, W_s };

    /// Dense view of one stack entry.
    double value(Stack s, int slot, int x, int y, int z) const {
        const std::size_t p = static_cast<std::size_t>(y) * width_ + x;
        if (level_[p] != z) return 0.0;
        switch (s) {
            case Stack::F_c: return cos_[slot][p] * intensity_[p];
            case Stack::F_s: return sin_[slot][p] * intensity_[p];
            case Stack::W_c: return cos_[slot][p];
            case Stack::W_s: return sin_[slot][p];
        }
        return 0.0;
    }

private:
    friend AuxStack build_aux_stacks(const Image&, double, const std::vector<int>&, const IntensityLut*);

    int width_ = 0;
    int height_ = 0;
    double T_r_ = 0.0;
    std::vector<int> ks_;
    std::vector<std::uint8_t> level_;
    std::vector<double> intensity_;
    std::vector<std::vector<double>> cos_, sin_;
    std::array<std::size_t, kLevels + 1> bucket_start_{};
    std::vector<std::uint32_t> bucket_pixels_;
};

/// Builds stacks for the given frequencies; integer intensities read the lut when supplied.
inline AuxStack build_aux_stacks(const Image& image, double T_r, const std::vector<int>& frequencies,
                                 const IntensityLut* lut = nullptr) {
    if (!(T_r > 0.0)) throw std::invalid_argument("T_r must be positive");
    if (image.size() > 0xffffffffu) throw std::invalid_argument("image too large");
    AuxStack s;
    s.width_ = image.width();
    s.height_ = image.height();
    s.T_r_ = T_r;
    s.ks_ = frequencies;
    const std::size_t n = image.size();
    s.intensity_ = image.samples();
    s.level_.resize(n);
    for (std::size_t p = 0; p < n; ++p) s.level_[p] = static_cast<std::uint8_t>(quantize_intensity(s.intensity_[p]));

    std::vector<int> lut_slot(frequencies.size(), -1);
    if (lut) {
        if (lut->T_r() != T_r) throw std::invalid_argument("lookup table built for a different T_r");
        for (std::size_t i = 0; i < frequencies.size(); ++i) lut_slot[i] = lut->slot(frequencies[i]);
    }
    s.cos_.assign(frequencies.size(), std::vector<double>(n));
    s.sin_.assign(frequencies.size(), std::vector<double>(n));
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        const int k = frequencies[i];
        auto& gc = s.cos_[i];
        auto& gs = s.sin_[i];
        for (std::size_t p = 0; p < n; ++p) {
            const double v = s.intensity_[p];
            if (lut_slot[i] >= 0 && v == static_cast<double>(s.level_[p])) {
                gc[p] = lut->cos_at(lut_slot[i], s.level_[p]);
                gs[p] = lut->sin_at(lut_slot[i], s.level_[p]);
            } else {
                const double ph = range_phase(k, v, T_r);
                gc[p] = std::cos(ph);
                gs[p] = std::sin(ph);
            }
        }
    }

    std::array<std::size_t, kLevels + 1> start{};
    for (std::size_t p = 0; p < n; ++p) ++start[s.level_[p] + 1];
    for (int z = 0; z < kLevels; ++z) start[z + 1] += start[z];
    s.bucket_start_ = start;
    s.bucket_pixels_.resize(n);
    for (std::size_t p = 0; p < n; ++p) s.bucket_pixels_[start[s.level_[p]]++] = static_cast<std::uint32_t>(p);
    return s;
}

inline AuxStack build_aux_stacks(const Image& image, const RangePlan& plan, const IntensityLut* lut = nullptr) {
    std::vector<int> ks;
    for (const auto& t : plan.terms) ks.push_back(t.k);
    return build_aux_stacks(image, plan.T_r, ks, lut);
}

}  // namespace fastbf

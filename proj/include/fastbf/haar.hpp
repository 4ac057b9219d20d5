#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fastbf/kernel.hpp"
#include "fastbf/sat.hpp"
#include "fastbf/selection.hpp"

namespace fastbf {

/// One 1-D Haar factor: the scaling function phi, or psi_{j,k}.
struct HaarFactor {
    bool wavelet = false;
    int j = 0;
    int k = 0;

    static HaarFactor scaling() { return {}; }
    static HaarFactor psi(int j, int k) { return {true, j, k}; }

    bool operator==(const HaarFactor& o) const {
        return wavelet == o.wavelet && (!wavelet || (j == o.j && k == o.k));
    }
};

enum class HaarFamily { scaling_scaling = 0, scaling_wavelet = 1, wavelet_scaling = 2, wavelet_wavelet = 3 };

struct HaarTerm {
    HaarFactor x;
    HaarFactor y;
    double coefficient = 0.0;

    HaarFamily family() const {
        if (!x.wavelet) return y.wavelet ? HaarFamily::scaling_wavelet : HaarFamily::scaling_scaling;
        return y.wavelet ? HaarFamily::wavelet_wavelet : HaarFamily::wavelet_scaling;
    }
};

/// Translation Z_k = sign(k)(2|k| - 1)T; zero for the mother wavelet.
inline double haar_shift(int k, double T) {
    if (k == 0) return 0.0;
    return (k > 0 ? 1.0 : -1.0) * (2.0 * std::abs(k) - 1.0) * T;
}

/// Valid translation indices at level j, ascending.
inline std::vector<int> haar_translations(int j) {
    if (j < 0) throw std::invalid_argument("negative Haar level");
    if (j == 0) return {0};
    const int half = 1 << (j - 1);
    std::vector<int> ks;
    for (int k = -half; k <= half; ++k)
        if (k != 0) ks.push_back(k);
    return ks;
}

/// psi factors with level <= j_max in (j, k) order.
inline std::vector<HaarFactor> wavelet_factors(int j_max) {
    std::vector<HaarFactor> out;
    for (int j = 0; j <= j_max; ++j)
        for (int k : haar_translations(j)) out.push_back(HaarFactor::psi(j, k));
    return out;
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Positive and negative halves [A1, A2] of psi_{j,k}.
inline std::pair<Interval, Interval> wavelet_halves(int j, int k, double T) {
    const double z = haar_shift(k, T);
    const double s = std::ldexp(1.0, -j);
    return {{s * (z - T), s * z}, {s * z, s * (z + T)}};
}

/// Haar factor value at x, half-open on the high side.
inline double haar_value(const HaarFactor& f, double T, double x) {
    if (!f.wavelet) return (x >= -T && x < T) ? 1.0 : 0.0;
    const double u = std::ldexp(x, f.j) - haar_shift(f.k, T);
    if (u >= -T && u < 0.0) return 1.0;
    if (u >= 0.0 && u < T) return -1.0;
    return 0.0;
}

/// 1/<f, f> over [-T, T].
inline double haar_normalization(const HaarFactor& f, double T) {
    return (f.wavelet ? std::ldexp(1.0, f.j) : 1.0) / (2.0 * T);
}

/// Every 2-D term with j1, j2 <= j_max in canonical order, coefficients zero.
inline std::vector<HaarTerm> haar_canonical_terms(int j_max) {
    if (j_max < 0) throw std::invalid_argument("j_max must be non-negative");
    const auto psis = wavelet_factors(j_max);
    const HaarFactor phi = HaarFactor::scaling();
    std::vector<HaarTerm> terms;
    terms.reserve((psis.size() + 1) * (psis.size() + 1));
    terms.push_back({phi, phi, 0.0});
    for (const auto& p : psis) terms.push_back({phi, p, 0.0});
    for (const auto& p : psis) terms.push_back({p, phi, 0.0});
    for (const auto& a : psis)
        for (const auto& b : psis) terms.push_back({a, b, 0.0});
    return terms;
}

inline constexpr double kRoundoffFloor = 1e-13;

namespace detail {

struct CellSpan {
    long begin;
    long end;
    double sign;
};

inline std::vector<CellSpan> factor_cells(const HaarFactor& f, double T, long n) {
    const double h = 2.0 * T / static_cast<double>(n);
    auto cell = [&](double x) { return std::lround((x + T) / h); };
    if (!f.wavelet) return {{0, n, 1.0}};
    const auto [a1, a2] = wavelet_halves(f.j, f.k, T);
    return {{cell(a1.lo), cell(a1.hi), 1.0}, {cell(a2.lo), cell(a2.hi), -1.0}};
}

}  // namespace detail

/// Coefficients of K(|x|) on [-T, T]^2 for all terms with levels <= j_max, by the midpoint rule.
inline std::vector<HaarTerm> haar_coefficients(const TruncatedKernel& kernel, int j_max,
                                               long samples_per_axis = 2048) {
    if (kernel.base.role() != KernelRole::spatial)
        throw std::invalid_argument("Haar expansion expects a spatial kernel");
    if (j_max < 0 || j_max > 20) throw std::invalid_argument("j_max out of range");
    const long align = 1L << (j_max + 1);
    long n = std::max(samples_per_axis, align);
    n = (n + align - 1) / align * align;

    const double T = kernel.T;
    const double h = 2.0 * T / static_cast<double>(n);
    std::vector<double> centers(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) centers[i] = -T + (static_cast<double>(i) + 0.5) * h;
    // The square [-T, T]^2 carries K(|x|) without a radial cut.
    const Sat2D sat = build_sat_2d(static_cast<int>(n), static_cast<int>(n), [&](int x, int y) {
        return kernel.base_value(std::hypot(centers[x], centers[y]));
    });

    auto terms = haar_canonical_terms(j_max);
    const double cell_area = h * h;
    for (auto& t : terms) {
        double integral = 0.0, magnitude = 0.0;
        for (const auto& sx : detail::factor_cells(t.x, T, n))
            for (const auto& sy : detail::factor_cells(t.y, T, n)) {
                const Rect r{static_cast<int>(sx.begin) - 1, static_cast<int>(sx.end) - 1,
                             static_cast<int>(sy.begin) - 1, static_cast<int>(sy.end) - 1};
                const double part = region_sum_2d(sat, r);
                integral += sx.sign * sy.sign * part;
                magnitude += std::fabs(part);
            }
        // cancellation residue below round-off is reported as an exact zero
        if (std::fabs(integral) <= kRoundoffFloor * magnitude) integral = 0.0;
        t.coefficient = haar_normalization(t.x, T) * haar_normalization(t.y, T) * integral * cell_area;
    }
    return terms;
}

inline std::vector<IndexedCoefficient> as_indexed(const std::vector<HaarTerm>& terms) {
    std::vector<IndexedCoefficient> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) out.push_back({i, terms[i].coefficient});
    return out;
}

inline std::string haar_factor_label(const HaarFactor& f) {
    if (!f.wavelet) return "phi";
    return "psi(" + std::to_string(f.j) + ";" + std::to_string(f.k) + ")";
}

inline std::string haar_term_label(const HaarTerm& t) {
    return haar_factor_label(t.x) + "*" + haar_factor_label(t.y);
}

}  // namespace fastbf

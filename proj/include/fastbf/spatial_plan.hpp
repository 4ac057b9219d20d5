#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fastbf/haar.hpp"

namespace fastbf {

/// Weighted center-relative box [lx, hx) x [ly, hy).
struct BoxTerm {
    double weight = 0.0;
    double lx = 0.0;
    double hx = 0.0;
    double ly = 0.0;
    double hy = 0.0;

    bool contains(double dx, double dy) const { return dx >= lx && dx < hx && dy >= ly && dy < hy; }
};

struct SpatialPlan {
    std::vector<BoxTerm> boxes;
    double T_s = 0.0;
    std::vector<HaarTerm> terms;
};

namespace detail {

struct SignedInterval {
    Interval span;
    double sign;
};

inline std::vector<SignedInterval> factor_intervals(const HaarFactor& f, double T) {
    if (!f.wavelet) return {{{-T, T}, 1.0}};
    const auto [a1, a2] = wavelet_halves(f.j, f.k, T);
    return {{a1, 1.0}, {a2, -1.0}};
}

}  // namespace detail

/// Lowers each term to 1, 2 or 4 boxes.
inline SpatialPlan haar_to_boxes(const std::vector<HaarTerm>& terms, double T_s) {
    if (terms.empty()) throw std::invalid_argument("spatial plan needs at least one term");
    if (!(T_s > 0.0)) throw std::invalid_argument("T_s must be positive");
    SpatialPlan plan;
    plan.T_s = T_s;
    plan.terms = terms;
    for (const auto& t : terms) {
        const auto xs = detail::factor_intervals(t.x, T_s);
        const auto ys = detail::factor_intervals(t.y, T_s);
        auto push = [&](const detail::SignedInterval& a, const detail::SignedInterval& b) {
            plan.boxes.push_back({t.coefficient * a.sign * b.sign, a.span.lo, a.span.hi, b.span.lo, b.span.hi});
        };
        if (xs.size() == 2 && ys.size() == 2) {
            // quadrant pattern A1xA1, A1xA2, A2xA2, A2xA1 with signs +, -, +, -
            push(xs[0], ys[0]);
            push(xs[0], ys[1]);
            push(xs[1], ys[1]);
            push(xs[1], ys[0]);
        } else {
            for (const auto& a : xs)
                for (const auto& b : ys) push(a, b);
        }
    }
    return plan;
}

inline double eval_spatial_plan(const SpatialPlan& plan, double dx, double dy) {
    double acc = 0.0;
    for (const auto& b : plan.boxes)
        if (b.contains(dx, dy)) acc += b.weight;
    return acc;
}

/// f1 (+ f2 (+ f3 (+ f4))) built from the level-1 coefficients; box_count in 1..4.
inline SpatialPlan box_equivalent_plan(const TruncatedKernel& kernel, int box_count) {
    if (box_count < 1 || box_count > 4) throw std::invalid_argument("box count must be 1..4");
    const auto all = haar_coefficients(kernel, 1);
    std::vector<HaarTerm> chosen;
    for (const auto& t : all) {
        const bool x_ok = !t.x.wavelet || t.x.j == 1;
        const bool y_ok = !t.y.wavelet || t.y.j == 1;
        if (!x_ok || !y_ok) continue;
        const int group = static_cast<int>(t.family()) + 1;
        if (group <= box_count) chosen.push_back(t);
    }
    return haar_to_boxes(chosen, kernel.T);
}

/// Best n-term plan among the first m canonical terms with levels <= j_max.
inline SpatialPlan best_n_spatial_plan(const TruncatedKernel& kernel, std::size_t n, std::size_t m,
                                       int j_max = 4) {
    const auto all = haar_coefficients(kernel, j_max);
    std::vector<HaarTerm> chosen;
    for (const auto& c : best_n_terms(as_indexed(all), n, m)) chosen.push_back(all[c.index]);
    return haar_to_boxes(chosen, kernel.T);
}

}  // namespace fastbf

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fastbf/kernel.hpp"
#include "fastbf/selection.hpp"

namespace fastbf {

struct RangeTerm {
    int k = 0;
    double a = 0.0;
};

/// Cosine terms on [-T_r, T_r].
struct RangePlan {
    double T_r = 0.0;
    std::vector<RangeTerm> terms;
};

/// Argument of the k-th cosine at intensity v; shared by every trig path so results match bitwise.
inline double range_phase(int k, double v, double T_r) {
    return std::numbers::pi * static_cast<double>(k) * v / T_r;
}

/// a_0 = (1/2T) int f, a_k = (1/T) int f cos(pi k x / T), k < m, midpoint rule.
inline std::vector<IndexedCoefficient> trig_coefficients(const TruncatedKernel& kernel, std::size_t m,
                                                         long samples = 8192) {
    if (kernel.base.role() != KernelRole::range)
        throw std::invalid_argument("cosine expansion expects a range kernel");
    if (m < 1) throw std::invalid_argument("M must be at least 1");
    if (samples < 2) throw std::invalid_argument("too few quadrature samples");
    const double T = kernel.T;
    const double h = 2.0 * T / static_cast<double>(samples);
    std::vector<double> xs(static_cast<std::size_t>(samples)), fs(xs.size());
    for (long i = 0; i < samples; ++i) {
        xs[i] = -T + (static_cast<double>(i) + 0.5) * h;
        fs[i] = kernel.base_value(xs[i]);
    }
    std::vector<IndexedCoefficient> out;
    out.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        double c = 0.0, s = 0.0, magnitude = 0.0;
        for (long i = 0; i < samples; ++i) {
            const double ph = range_phase(static_cast<int>(k), xs[i], T);
            c += fs[i] * std::cos(ph);
            s += fs[i] * std::sin(ph);
            magnitude += std::fabs(fs[i]);
        }
        // cancellation residue below round-off is reported as an exact zero
        if (std::fabs(c) <= 1e-13 * magnitude) c = 0.0;
        if (std::fabs(s) > 1e-9 * std::max(1.0, magnitude))
            throw std::logic_error("range kernel is not symmetric: sine coefficient is nonzero");
        out.push_back({k, (k == 0 ? c * h / (2.0 * T) : c * h / T)});
    }
    return out;
}

inline RangePlan make_range_plan(const TruncatedKernel& kernel, std::size_t n, std::size_t m) {
    RangePlan plan;
    plan.T_r = kernel.T;
    for (const auto& c : best_n_terms(trig_coefficients(kernel, m), n, m))
        plan.terms.push_back({static_cast<int>(c.index), c.value});
    return plan;
}

/// Series value at t; 0 outside [-T_r, T_r].
inline double eval_range_plan(const RangePlan& plan, double t) {
    if (std::fabs(t) > plan.T_r) return 0.0;
    double acc = 0.0;
    for (const auto& term : plan.terms) acc += term.a * std::cos(range_phase(term.k, t, plan.T_r));
    return acc;
}

}  // namespace fastbf

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fastbf/aux_stack.hpp"
#include "fastbf/image.hpp"
#include "fastbf/kernel.hpp"
#include "fastbf/parallel.hpp"
#include "fastbf/sat.hpp"
#include "fastbf/spatial_plan.hpp"
#include "fastbf/trig.hpp"

namespace fastbf {

struct FilterParams {
    TruncatedKernel spatial;
    SpatialPlan spatial_plan;
    TruncatedKernel range;
    RangePlan range_plan;
    std::size_t range_pool = 0;  // M used to select the range terms
    int radius = 0;
};

struct FilterConfig {
    double sigma_s = 3.0;
    double sigma_r = 30.0;
    double epsilon = 0.01;
    int range_terms = 5;
    int m_factor = 20;
    int spatial_terms = 0;  // 0 selects the f1 + f2 + f3 plan
    int j_max = 4;
    int radius = -1;        // -1 selects ceil(T_s)
};

/// ceil(T) with a guard against T landing one ulp above an integer.
inline int default_radius(double T) { return static_cast<int>(std::ceil(T - 1e-9)); }

inline void validate_params(const FilterParams& p) {
    if (p.range_plan.terms.empty()) throw std::invalid_argument("range plan has no terms");
    if (p.spatial_plan.boxes.empty()) throw std::invalid_argument("spatial plan has no boxes");
    if (!(p.range_plan.T_r > 0.0)) throw std::invalid_argument("T_r must be positive");
    if (p.radius < default_radius(p.spatial_plan.T_s))
        throw std::invalid_argument("window radius " + std::to_string(p.radius) + " smaller than ceil(T_s)");
}

inline FilterParams make_filter_params(const FilterConfig& c) {
    if (c.range_terms < 1 || c.m_factor < 1 || c.spatial_terms < 0)
        throw std::invalid_argument("term counts must be positive");
    FilterParams p;
    p.spatial = truncate_kernel(KernelSpec::gaussian(c.sigma_s, KernelRole::spatial), c.epsilon);
    p.range = truncate_kernel(KernelSpec::gaussian(c.sigma_r, KernelRole::range), c.epsilon);
    if (c.spatial_terms == 0) {
        p.spatial_plan = box_equivalent_plan(p.spatial, 3);
    } else {
        const auto n = static_cast<std::size_t>(c.spatial_terms);
        p.spatial_plan = best_n_spatial_plan(p.spatial, n, n * c.m_factor, c.j_max);
    }
    p.range_pool = static_cast<std::size_t>(c.range_terms) * c.m_factor;
    p.range_plan = make_range_plan(p.range, static_cast<std::size_t>(c.range_terms), p.range_pool);
    p.radius = c.radius >= 0 ? c.radius : default_radius(p.spatial.T);
    validate_params(p);
    return p;
}

struct FastOptions {
    bool use_lut = false;
    unsigned threads = 1;       // 0 means hardware concurrency
    bool clamp_output = true;   // clamp to the input intensity range
};

struct FilterDiagnostics {
    std::size_t degenerate_pixels = 0;
    std::size_t slices_built = 0;
    std::size_t boxes_evaluated = 0;
};

/// Box with inclusive integer offsets.
struct PixelBox {
    double weight = 0.0;
    int dx0 = 0, dx1 = 0, dy0 = 0, dy1 = 0;
};

/// Offsets u with l <= u < h for each continuous box; empty boxes are dropped.
inline std::vector<PixelBox> discretize_boxes(const SpatialPlan& plan) {
    std::vector<PixelBox> out;
    for (const auto& b : plan.boxes) {
        PixelBox p{b.weight, static_cast<int>(std::ceil(b.lx)), static_cast<int>(std::ceil(b.hx)) - 1,
                   static_cast<int>(std::ceil(b.ly)), static_cast<int>(std::ceil(b.hy)) - 1};
        if (p.dx0 <= p.dx1 && p.dy0 <= p.dy1) out.push_back(p);
    }
    return out;
}

namespace detail {

struct TermChannels {
    int slot;     // frequency slot in the stack
    double a;
    int base;     // first channel: cos*I, [sin*I], cos, [sin]
    bool has_sin;
};

}  // namespace detail

/// Evaluates the box-filter expansion with prebuilt stacks.
inline Image fast_bf_with_stack(const Image& image, const AuxStack& stack, const SpatialPlan& spatial,
                                const RangePlan& range, const FastOptions& opt = {},
                                FilterDiagnostics* diag = nullptr) {
    if (stack.width() != image.width() || stack.height() != image.height())
        throw std::invalid_argument("stack and image sizes differ");
    if (stack.T_r() != range.T_r) throw std::invalid_argument("stack built for a different T_r");
    if (range.terms.empty()) throw std::invalid_argument("range plan has no terms");

    std::vector<detail::TermChannels> terms;
    int channels = 0;
    for (const auto& t : range.terms) {
        const int slot = stack.slot(t.k);
        if (slot < 0) throw std::invalid_argument("stack lacks frequency " + std::to_string(t.k));
        const bool has_sin = t.k != 0;
        terms.push_back({slot, t.a, channels, has_sin});
        channels += has_sin ? 4 : 2;
    }
    const auto boxes = discretize_boxes(spatial);
    const int w = image.width(), h = image.height();
    const std::size_t n = image.size();
    const int half = static_cast<int>(std::floor(range.T_r + 0.5));

    double gmin = image.samples()[0], gmax = gmin;
    for (double v : image.samples()) {
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
    }

    // per-pixel channel values, written into the slice buffer when a level enters the window
    auto fill = [&](double* dst, std::size_t p) {
        const double v = stack.intensities()[p];
        for (const auto& t : terms) {
            const double gc = stack.g_cos(t.slot)[p];
            if (t.has_sin) {
                const double gs = stack.g_sin(t.slot)[p];
                dst[t.base] = gc * v;
                dst[t.base + 1] = gs * v;
                dst[t.base + 2] = gc;
                dst[t.base + 3] = gs;
            } else {
                dst[t.base] = gc * v;
                dst[t.base + 1] = gc;
            }
        }
    };

    Image out(w, h);
    const unsigned workers = resolve_threads(opt.threads);
    std::vector<FilterDiagnostics> per_worker(std::max(1u, workers));
    const std::size_t cs = static_cast<std::size_t>(channels);

    parallel_chunks(kLevels, workers, [&](unsigned worker, std::size_t zb, std::size_t ze) {
        FilterDiagnostics& d = per_worker[worker];
        std::vector<double> slice(n * cs, 0.0);
        MultiSat2D sat(w, h, channels);
        std::vector<double> acc(cs);
        auto add_level = [&](int z) {
            if (z < 0 || z >= kLevels) return;
            for (const std::uint32_t* p = stack.bucket_begin(z); p != stack.bucket_end(z); ++p)
                fill(&slice[*p * cs], *p);
        };
        auto drop_level = [&](int z) {
            if (z < 0 || z >= kLevels) return;
            for (const std::uint32_t* p = stack.bucket_begin(z); p != stack.bucket_end(z); ++p)
                std::fill_n(&slice[*p * cs], cs, 0.0);
        };
        const int z_begin = static_cast<int>(zb), z_end = static_cast<int>(ze);
        for (int z = std::max(0, z_begin - half); z <= std::min(kLevels - 1, z_begin + half); ++z) add_level(z);
        for (int z = z_begin; z < z_end; ++z) {
            if (z > z_begin) {
                if (z + half < kLevels) add_level(z + half);
                if (z - half - 1 >= 0) drop_level(z - half - 1);
            }
            if (stack.bucket_size(z) == 0) continue;
            sat.build(slice.data());
            ++d.slices_built;
            for (const std::uint32_t* pp = stack.bucket_begin(z); pp != stack.bucket_end(z); ++pp) {
                const std::size_t p = *pp;
                const int x = static_cast<int>(p % w), y = static_cast<int>(p / w);
                std::fill(acc.begin(), acc.end(), 0.0);
                for (const auto& b : boxes)
                    sat.add_region_sums({x + b.dx0 - 1, x + b.dx1, y + b.dy0 - 1, y + b.dy1}, b.weight, acc.data());
                d.boxes_evaluated += boxes.size();
                double num = 0.0, den = 0.0;
                for (const auto& t : terms) {
                    const double gc = stack.g_cos(t.slot)[p];
                    if (t.has_sin) {
                        const double gs = stack.g_sin(t.slot)[p];
                        num += t.a * (gc * acc[t.base] + gs * acc[t.base + 1]);
                        den += t.a * (gc * acc[t.base + 2] + gs * acc[t.base + 3]);
                    } else {
                        num += t.a * (gc * acc[t.base]);
                        den += t.a * (gc * acc[t.base + 1]);
                    }
                }
                double v;
                if (den > 1e-12) {
                    v = num / den;
                } else {
                    v = stack.intensities()[p];
                    ++d.degenerate_pixels;
                }
                out.samples()[p] = opt.clamp_output ? std::clamp(v, gmin, gmax) : v;
            }
        }
    });

    if (diag) {
        *diag = {};
        for (const auto& d : per_worker) {
            diag->degenerate_pixels += d.degenerate_pixels;
            diag->slices_built += d.slices_built;
            diag->boxes_evaluated += d.boxes_evaluated;
        }
    }
    return out;
}

/// Constant-time bilateral filter: stacks are built, then evaluated slice by slice.
inline Image fast_bf(const Image& image, const FilterParams& params, const FastOptions& opt = {},
                     FilterDiagnostics* diag = nullptr) {
    validate_params(params);
    AuxStack stack;
    if (opt.use_lut) {
        const IntensityLut lut = build_intensity_lut(params.range_plan);
        stack = build_aux_stacks(image, params.range_plan, &lut);
    } else {
        stack = build_aux_stacks(image, params.range_plan);
    }
    return fast_bf_with_stack(image, stack, params.spatial_plan, params.range_plan, opt, diag);
}

}  // namespace fastbf

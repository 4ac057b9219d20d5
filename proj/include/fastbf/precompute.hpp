#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "fastbf/aux_stack.hpp"
#include "fastbf/fast_bilateral.hpp"

namespace fastbf {

/// Stacks for frequencies 0..max_frequency, keyed by candidate radius T_{r_i}.
class PrecomputeCache {
public:
    bool empty() const { return entries_.empty(); }
    int max_frequency() const { return max_frequency_; }
    const std::map<double, AuxStack>& entries() const { return entries_; }

    /// Minimum cached radius >= T_r.
    double select_radius(double T_r) const {
        if (entries_.empty()) throw std::out_of_range("precompute cache is empty");
        auto it = entries_.lower_bound(T_r);
        if (it == entries_.end()) throw std::out_of_range("no cached radius covers T_r");
        return it->first;
    }

    const AuxStack& stack(double radius) const {
        auto it = entries_.find(radius);
        if (it == entries_.end()) throw std::out_of_range("no cached radius covers T_r");
        return it->second;
    }

private:
    friend PrecomputeCache precompute_stacks(const Image&, const std::vector<double>&, int, bool);

    int max_frequency_ = 0;
    std::map<double, AuxStack> entries_;
};

inline PrecomputeCache precompute_stacks(const Image& image, const std::vector<double>& radii,
                                         int max_frequency = 7, bool use_lut = false) {
    if (radii.empty()) throw std::invalid_argument("radius list is empty");
    if (!std::is_sorted(radii.begin(), radii.end())) throw std::invalid_argument("radii must be ascending");
    if (max_frequency < 0) throw std::invalid_argument("max frequency must be non-negative");
    std::vector<int> ks;
    for (int k = 0; k <= max_frequency; ++k) ks.push_back(k);
    PrecomputeCache cache;
    cache.max_frequency_ = max_frequency;
    for (double r : radii) {
        if (!(r > 0.0)) throw std::invalid_argument("radii must be positive");
        if (use_lut) {
            const IntensityLut lut(r, ks);
            cache.entries_.emplace(r, build_aux_stacks(image, r, ks, &lut));
        } else {
            cache.entries_.emplace(r, build_aux_stacks(image, r, ks));
        }
    }
    return cache;
}

/// params with the range kernel re-truncated at T_{r_i} and its plan recomputed on [-T_{r_i}, T_{r_i}].
inline FilterParams substitute_range_radius(const FilterParams& params, double T_ri) {
    FilterParams p = params;
    p.range = truncate_at(params.range.base, T_ri);
    const std::size_t pool = params.range_pool > 0 ? params.range_pool : params.range_plan.terms.size();
    p.range_plan = make_range_plan(p.range, params.range_plan.terms.size(), pool);
    return p;
}

/// Filters with cached stacks; equals fast_bf on substitute_range_radius(params, T_{r_i}).
inline Image filter_with_cache(const Image& image, const PrecomputeCache& cache, const FilterParams& params,
                               const FastOptions& opt = {}, FilterDiagnostics* diag = nullptr) {
    validate_params(params);
    const double T_ri = cache.select_radius(params.range.T);
    const AuxStack& stack = cache.stack(T_ri);
    if (stack.intensities() != image.samples() || stack.width() != image.width())
        throw std::invalid_argument("cache was built for a different image");
    const FilterParams p = substitute_range_radius(params, T_ri);
    return fast_bf_with_stack(image, stack, p.spatial_plan, p.range_plan, opt, diag);
}

}  // namespace fastbf

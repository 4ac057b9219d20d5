#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fastbf {

struct IndexedCoefficient {
    std::size_t index = 0;  // canonical position
    double value = 0.0;
};

namespace detail {

/// |v| reduced to (decimal exponent, 12-digit mantissa) so last-bit quadrature noise ties.
inline std::pair<int, std::int64_t> magnitude_key(double v) {
    const double a = std::fabs(v);
    if (a == 0.0 || !std::isfinite(a)) return {a == 0.0 ? -100000 : 100000, 0};
    int e = static_cast<int>(std::floor(std::log10(a)));
    auto m = static_cast<std::int64_t>(std::llround(a * std::pow(10.0, 11 - e)));
    if (m >= 1000000000000LL) {
        m = static_cast<std::int64_t>(std::llround(static_cast<double>(m) / 10.0));
        ++e;
    } else if (m < 100000000000LL) {
        m *= 10;
        --e;
    }
    return {e, m};
}

}  // namespace detail

/// The n largest |coefficients| among the first m, ties to the smaller index, in canonical order.
inline std::vector<IndexedCoefficient> best_n_terms(const std::vector<IndexedCoefficient>& coeffs,
                                                    std::size_t n, std::size_t m) {
    if (n < 1) throw std::invalid_argument("N must be at least 1");
    if (m < n) throw std::invalid_argument("M must be at least N");
    if (n > coeffs.size()) throw std::invalid_argument("N exceeds the available coefficients");
    const std::size_t pool = std::min(m, coeffs.size());
    if (n > pool) throw std::invalid_argument("N exceeds the available coefficients");

    std::vector<std::size_t> order(pool);
    std::vector<std::pair<int, std::int64_t>> keys(pool);
    for (std::size_t i = 0; i < pool; ++i) {
        order[i] = i;
        keys[i] = detail::magnitude_key(coeffs[i].value);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
    order.resize(n);
    std::sort(order.begin(), order.end());

    std::vector<IndexedCoefficient> out;
    out.reserve(n);
    for (std::size_t i : order) out.push_back(coeffs[i]);
    return out;
}

/// Smallest M whose first-M pool already contains the overall best-N set.
inline std::size_t minimal_m(const std::vector<IndexedCoefficient>& coeffs, std::size_t n) {
    const auto best = best_n_terms(coeffs, n, coeffs.size());
    std::size_t m = 0;
    for (const auto& c : best) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i].index == c.index) {
                m = std::max(m, i + 1);
                break;
            }
        }
    }
    return m;
}

}  // namespace fastbf

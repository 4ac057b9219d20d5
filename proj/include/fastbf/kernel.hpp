#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fastbf {

enum class KernelRole { spatial, range };

/// Symmetric, non-increasing kernel on x >= 0: a Gaussian or a sampled table.
class KernelSpec {
public:
    enum class Family { gaussian, tabulated };

    static KernelSpec gaussian(double sigma, KernelRole role) {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
        KernelSpec k;
        k.family_ = Family::gaussian;
        k.role_ = role;
        k.sigma_ = sigma;
        return k;
    }

    /// values[i] = K(i * step); linear interpolation between samples, 0 beyond the table.
    static KernelSpec tabulated(double step, std::vector<double> values, KernelRole role) {
        if (!(step > 0.0)) throw std::invalid_argument("table step must be positive");
        if (values.size() < 2) throw std::invalid_argument("table needs at least two samples");
        if (!(values[0] > 0.0)) throw std::invalid_argument("kernel value at 0 must be positive");
        for (std::size_t i = 1; i < values.size(); ++i)
            if (!(values[i] <= values[i - 1]) || values[i] < 0.0)
                throw std::invalid_argument("tabulated kernel must be non-negative and non-increasing");
        KernelSpec k;
        k.family_ = Family::tabulated;
        k.role_ = role;
        k.step_ = step;
        k.table_ = std::move(values);
        return k;
    }

    Family family() const { return family_; }
    KernelRole role() const { return role_; }
    double sigma() const { return sigma_; }

    /// Largest |x| on which the kernel is defined.
    double support() const {
        if (family_ == Family::gaussian) return std::numeric_limits<double>::infinity();
        return step_ * static_cast<double>(table_.size() - 1);
    }

    double operator()(double x) const {
        x = std::fabs(x);
        if (family_ == Family::gaussian) return std::exp(-x * x / (2.0 * sigma_ * sigma_));
        const double u = x / step_;
        const std::size_t i = static_cast<std::size_t>(u);
        if (i + 1 >= table_.size()) return x <= support() ? table_.back() : 0.0;
        const double t = u - static_cast<double>(i);
        return table_[i] + t * (table_[i + 1] - table_[i]);
    }

    KernelSpec scaled(double factor) const {
        if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
        KernelSpec k = *this;
        k.scale_ *= factor;
        return k;
    }
    double scale() const { return scale_; }
    double value(double x) const { return scale_ * (*this)(x); }

    KernelSpec() = default;

private:
    Family family_ = Family::gaussian;
    KernelRole role_ = KernelRole::spatial;
    double sigma_ = 1.0;
    double step_ = 1.0;
    double scale_ = 1.0;
    std::vector<double> table_;
};

/// Kernel forced to zero outside [-T, T].
struct TruncatedKernel {
    KernelSpec base;
    double T = 0.0;
    double epsilon = 0.0;

    /// Untruncated (scaled) kernel value.
    double base_value(double x) const { return base.value(x); }
    double operator()(double x) const { return std::fabs(x) <= T ? base.value(x) : 0.0; }
};

/// Smallest x in [0, upper] with f(x) <= threshold for a non-increasing f, by bisection.
template <class F>
double truncation_radius_bisect(F&& f, double threshold, double upper, double rel_tol = 1e-9) {
    if (!(f(upper) <= threshold)) throw std::domain_error("kernel not truncatable");
    if (f(0.0) <= threshold) return 0.0;
    double lo = 0.0, hi = upper;
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) <= threshold) hi = mid;
        else lo = mid;
    }
    return hi;
}

inline TruncatedKernel truncate_kernel(const KernelSpec& spec, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    TruncatedKernel t{spec, 0.0, epsilon};
    if (spec.family() == KernelSpec::Family::gaussian) {
        t.T = spec.sigma() * std::sqrt(-2.0 * std::log(epsilon));
    } else {
        const double k0 = spec(0.0);
        t.T = truncation_radius_bisect([&](double x) { return spec(x) / k0; }, epsilon, spec.support());
    }
    if (!(t.T > 0.0)) throw std::domain_error("kernel not truncatable");
    return t;
}

/// Truncation at an explicit radius, bypassing epsilon.
inline TruncatedKernel truncate_at(const KernelSpec& spec, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("truncation radius must be positive");
    return TruncatedKernel{spec, T, spec(T) / spec(0.0)};
}

}  // namespace fastbf

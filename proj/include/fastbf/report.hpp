#pragma once

#include <cstddef>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "fastbf/haar.hpp"
#include "fastbf/selection.hpp"
#include "fastbf/trig.hpp"

namespace fastbf {

struct ReportRow {
    std::string basis;
    std::size_t index = 0;
    double coefficient = 0.0;
    bool selected = false;
};

struct ApproxReport {
    std::vector<ReportRow> rows;
    std::vector<std::pair<std::size_t, std::size_t>> n_to_m;  // (N, minimal M)
};

namespace detail {

inline ApproxReport build_report(const std::vector<IndexedCoefficient>& coeffs, std::vector<std::string> labels,
                                 std::size_t selected_n, std::size_t m_factor, std::size_t n_max) {
    ApproxReport rep;
    std::vector<bool> chosen(coeffs.size(), false);
    if (selected_n > 0) {
        for (const auto& c : best_n_terms(coeffs, selected_n, selected_n * m_factor)) chosen[c.index] = true;
    }
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        rep.rows.push_back({std::move(labels[i]), i, coeffs[i].value, chosen[i]});
    for (std::size_t n = 1; n <= n_max && n <= coeffs.size(); ++n) rep.n_to_m.emplace_back(n, minimal_m(coeffs, n));
    return rep;
}

}  // namespace detail

inline ApproxReport spatial_report(const TruncatedKernel& kernel, int j_max, std::size_t selected_n,
                                   std::size_t m_factor = 20, std::size_t n_max = 8) {
    const auto terms = haar_coefficients(kernel, j_max);
    std::vector<std::string> labels;
    for (const auto& t : terms) labels.push_back(haar_term_label(t));
    return detail::build_report(as_indexed(terms), std::move(labels), selected_n, m_factor, n_max);
}

inline ApproxReport range_report(const TruncatedKernel& kernel, std::size_t count, std::size_t selected_n,
                                 std::size_t m_factor = 20, std::size_t n_max = 8) {
    const auto coeffs = trig_coefficients(kernel, count);
    std::vector<std::string> labels;
    for (const auto& c : coeffs) labels.push_back("cos(" + std::to_string(c.index) + ")");
    return detail::build_report(coeffs, std::move(labels), selected_n, m_factor, n_max);
}

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string report_csv(const ApproxReport& rep) {
    std::string out = "basis,index,coefficient,selected\n";
    for (const auto& r : rep.rows)
        out += r.basis + "," + std::to_string(r.index) + "," + format_real(r.coefficient) + "," +
               (r.selected ? "1" : "0") + "\n";
    return out;
}

inline std::string report_summary(const ApproxReport& rep) {
    std::string out = "N->M:";
    for (const auto& [n, m] : rep.n_to_m) out += " (" + std::to_string(n) + "," + std::to_string(m) + ")";
    return out + "\n";
}

}  // namespace fastbf

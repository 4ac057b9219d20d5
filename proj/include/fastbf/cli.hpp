#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastbf/fastbf.hpp"

namespace fastbf::cli {

enum class Method { brute, fast, fast_lut };

struct RunConfig {
    std::string input;
    std::string output;
    double sigma_s = 3.0;
    double sigma_r = 30.0;
    double epsilon = 0.01;
    int spatial_terms = 0;
    int range_terms = 5;
    int m_factor = 20;
    int radius = -1;
    Method method = Method::fast;
    bool compare_oracle = false;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::vector<double> radii;
    std::vector<int> bench_radii{2, 6, 10, 14};
    std::vector<double> bench_sigma_r{40.0};
    std::vector<std::string> bench_methods{"brute", "fast", "fast-lut", "cached"};
    double bench_sigma_s = 0.0;  // 0 derives sigma_s from the radius
    int size = 256;
    int repeats = 5;
    int max_frequency = 7;
    // approx-report
    std::string role = "spatial";
    std::string kernel = "gaussian";
    double sigma = 5.0;
    double truncation = 0.0;
    int j_max = 4;
    int terms = 5;
    int count = 160;
    int n_max = 8;
    int width = 256;
    int height = 256;
};

/// Thrown for usage problems detected after parsing; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline FilterConfig filter_config(const RunConfig& c) {
    FilterConfig f;
    f.sigma_s = c.sigma_s;
    f.sigma_r = c.sigma_r;
    f.epsilon = c.epsilon;
    f.range_terms = c.range_terms;
    f.m_factor = c.m_factor;
    f.spatial_terms = c.spatial_terms;
    f.radius = c.radius;
    return f;
}

inline Image load_input(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("input file not found: " + path);
    return load_pgm_file(path);
}

inline Image run_method(Method m, const Image& img, const FilterParams& p, unsigned threads,
                        FilterDiagnostics* diag = nullptr) {
    switch (m) {
        case Method::brute: return brute_force_bf(img, p.spatial.base, p.range.base, p.radius, threads);
        case Method::fast: return fast_bf(img, p, {false, threads, true}, diag);
        case Method::fast_lut: return fast_bf(img, p, {true, threads, true}, diag);
    }
    return img;
}

inline std::string method_name(Method m) {
    return m == Method::brute ? "brute" : m == Method::fast ? "fast" : "fast-lut";
}

inline int cmd_filter(const RunConfig& c, std::ostream& out) {
    const Image img = load_input(c.input);
    const FilterParams p = make_filter_params(filter_config(c));
    FilterDiagnostics diag;
    const Image res = run_method(c.method, img, p, c.threads, &diag);
    save_pgm_file(c.output, res);
    if (c.method != Method::brute)
        out << "diagnostics: degenerate=" << diag.degenerate_pixels << " slices=" << diag.slices_built
            << " boxes=" << diag.boxes_evaluated << "\n";
    if (c.compare_oracle) {
        const Image ref = brute_force_bf(img, p.spatial.base, p.range.base, p.radius, c.threads);
        char buf[128];
        std::snprintf(buf, sizeof buf, "vs oracle: psnr=%.4f dB ssim=%.6f\n", psnr(res, ref),
                      std::min(img.width(), img.height()) >= 11 ? ssim(res, ref) : std::nan(""));
        out << buf;
    }
    return 0;
}

template <class F>
double median_ms(int repeats, F&& f) {
    f();  // warmup, discarded
    std::vector<double> t;
    for (int i = 0; i < repeats; ++i) {
        const auto a = std::chrono::steady_clock::now();
        f();
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - a).count());
    }
    std::sort(t.begin(), t.end());
    return t.size() % 2 ? t[t.size() / 2] : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
}

inline std::string bench_csv(const RunConfig& c) {
    if (c.bench_radii.empty() || c.bench_sigma_r.empty() || c.bench_methods.empty())
        throw UsageError("bench sweep lists must not be empty");
    if (c.repeats < 1) throw UsageError("--repeats must be positive");
    for (const auto& m : c.bench_methods)
        if (m != "brute" && m != "fast" && m != "fast-lut" && m != "cached")
            throw UsageError("unknown bench method: " + m);
    const Image img = c.input.empty() ? synthetic_image(c.size, c.size, c.seed) : load_input(c.input);
    const double tfac = std::sqrt(-2.0 * std::log(c.epsilon));
    std::string csv = "method,radius,sigma_s,sigma_r,image_px,wall_ms,psnr_vs_oracle,ssim_vs_oracle\n";
    for (double sr : c.bench_sigma_r) {
        for (int rho : c.bench_radii) {
            if (rho < 1) throw UsageError("bench radii must be positive");
            RunConfig rc = c;
            rc.sigma_r = sr;
            rc.sigma_s = c.bench_sigma_s > 0.0 ? c.bench_sigma_s : rho / tfac;
            rc.radius = rho;
            const FilterParams p = make_filter_params(filter_config(rc));
            const Image oracle = brute_force_bf(img, p.spatial.base, p.range.base, p.radius, c.threads);
            for (const auto& m : c.bench_methods) {
                Image res;
                double ms = 0.0;
                if (m == "cached") {
                    const PrecomputeCache cache = precompute_stacks(img, {p.range.T}, c.max_frequency);
                    ms = median_ms(c.repeats, [&] { res = filter_with_cache(img, cache, p, {false, c.threads, true}); });
                } else {
                    const Method mm = m == "brute" ? Method::brute : m == "fast" ? Method::fast : Method::fast_lut;
                    ms = median_ms(c.repeats, [&] { res = run_method(mm, img, p, c.threads); });
                }
                const bool can_ssim = std::min(img.width(), img.height()) >= 11;
                char buf[256];
                std::snprintf(buf, sizeof buf, "%s,%d,%.6g,%.6g,%zu,%.3f,%.4f,%.6f\n", m.c_str(), rho, rc.sigma_s, sr,
                              img.size(), ms, psnr(res, oracle), can_ssim ? ssim(res, oracle) : std::nan(""));
                csv += buf;
            }
        }
    }
    return csv;
}

inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

inline int cmd_bench(const RunConfig& c, std::ostream& out) {
    emit(c.output, bench_csv(c), out);
    return 0;
}

inline TruncatedKernel report_kernel(const RunConfig& c) {
    const KernelRole role = c.role == "range" ? KernelRole::range : KernelRole::spatial;
    KernelSpec spec;
    if (c.kernel == "gaussian") {
        spec = KernelSpec::gaussian(c.sigma, role);
    } else if (c.kernel == "constant") {
        if (!(c.truncation > 0.0)) throw UsageError("constant kernel needs --truncation");
        spec = KernelSpec::tabulated(c.truncation, {1.0, 1.0, 1.0}, role);
    } else {
        throw UsageError("unknown kernel: " + c.kernel);
    }
    return c.truncation > 0.0 ? truncate_at(spec, c.truncation) : truncate_kernel(spec, c.epsilon);
}

inline int cmd_approx_report(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.role != "spatial" && c.role != "range") throw UsageError("--role must be spatial or range");
    const TruncatedKernel k = report_kernel(c);
    const auto n = static_cast<std::size_t>(c.terms), mf = static_cast<std::size_t>(c.m_factor);
    const ApproxReport rep = c.role == "spatial" ? spatial_report(k, c.j_max, n, mf, c.n_max)
                                                 : range_report(k, static_cast<std::size_t>(c.count), n, mf, c.n_max);
    emit(c.output, report_csv(rep), out);
    (c.output.empty() || c.output == "-" ? err : out) << report_summary(rep);
    return 0;
}

inline int cmd_precompute(const RunConfig& c, std::ostream& out) {
    if (c.radii.empty()) throw UsageError("--radii must not be empty");
    const Image img = load_input(c.input);
    const FilterParams p = make_filter_params(filter_config(c));
    std::vector<double> radii = c.radii;
    std::sort(radii.begin(), radii.end());
    const auto a = std::chrono::steady_clock::now();
    const PrecomputeCache cache = precompute_stacks(img, radii, c.max_frequency);
    const auto b = std::chrono::steady_clock::now();
    const double chosen = cache.select_radius(p.range.T);
    const Image res = filter_with_cache(img, cache, p, {false, c.threads, true});
    const auto d = std::chrono::steady_clock::now();
    save_pgm_file(c.output, res);
    char buf[200];
    std::snprintf(buf, sizeof buf, "T_r=%.4f selected T_ri=%.4f precompute_ms=%.1f filter_ms=%.1f\n", p.range.T, chosen,
                  std::chrono::duration<double, std::milli>(b - a).count(),
                  std::chrono::duration<double, std::milli>(d - b).count());
    out << buf;
    return 0;
}

inline int cmd_synth(const RunConfig& c) {
    save_pgm_file(c.output, synthetic_image(c.width, c.height, c.seed));
    return 0;
}

/// Parses argv and dispatches; returns 0 ok, 1 runtime failure, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    std::string method = "fast";
    CLI::App app{"constant-time bilateral filter"};
    app.require_subcommand(1);

    auto add_filter_opts = [&](CLI::App* s, bool with_sigma_s) {
        if (with_sigma_s) s->add_option("--sigma-s", c.sigma_s, "spatial Gaussian sigma")->check(CLI::PositiveNumber);
        s->add_option("--sigma-r", c.sigma_r, "range Gaussian sigma")->check(CLI::PositiveNumber);
        s->add_option("--epsilon", c.epsilon, "truncation cutoff")->check(CLI::Range(1e-12, 0.999999));
        s->add_option("--range-terms", c.range_terms, "range terms N_r")->check(CLI::PositiveNumber);
        s->add_option("--spatial-terms", c.spatial_terms, "best-N Haar terms (0: f1+f2+f3)")->check(CLI::NonNegativeNumber);
        s->add_option("--m-factor", c.m_factor, "M = m_factor * N")->check(CLI::PositiveNumber);
        s->add_option("--threads", c.threads, "worker cap (0: all cores)");
    };

    auto* filter = app.add_subcommand("filter", "filter a PGM image");
    add_filter_opts(filter, true);
    filter->add_option("--method", method, "brute, fast or fast-lut")
        ->check(CLI::IsMember({"brute", "fast", "fast-lut"}));
    filter->add_option("--radius", c.radius, "window half-width (default ceil(T_s))");
    filter->add_flag("--compare-oracle", c.compare_oracle, "report PSNR/SSIM against brute force");
    filter->add_option("input", c.input, "input PGM")->required();
    filter->add_option("output", c.output, "output PGM")->required();

    auto* bench = app.add_subcommand("bench", "time methods over a radius / sigma_r sweep, CSV out");
    add_filter_opts(bench, false);
    bench->add_option("--radii", c.bench_radii, "window radii")->delimiter(',');
    bench->add_option("--sigma-r-list", c.bench_sigma_r, "range sigmas")->delimiter(',');
    bench->add_option("--methods", c.bench_methods, "brute,fast,fast-lut,cached")->delimiter(',');
    bench->add_option("--sigma-s", c.bench_sigma_s, "fixed spatial sigma (default radius/sqrt(-2 ln eps))")
        ->check(CLI::PositiveNumber);
    bench->add_option("--size", c.size, "synthetic image side")->check(CLI::Range(11, 16384));
    bench->add_option("--seed", c.seed, "synthetic image seed");
    bench->add_option("--repeats", c.repeats, "timed runs (median)");
    bench->add_option("--max-frequency", c.max_frequency, "cached stack frequencies");
    bench->add_option("--input", c.input, "input PGM instead of a synthetic image");
    bench->add_option("--output", c.output, "CSV path (default stdout)");

    auto* report = app.add_subcommand("approx-report", "coefficient CSV and N->M summary");
    report->add_option("--role", c.role, "spatial or range")->check(CLI::IsMember({"spatial", "range"}));
    report->add_option("--kernel", c.kernel, "gaussian or constant")->check(CLI::IsMember({"gaussian", "constant"}));
    report->add_option("--sigma", c.sigma, "Gaussian sigma")->check(CLI::PositiveNumber);
    report->add_option("--epsilon", c.epsilon, "truncation cutoff")->check(CLI::Range(1e-12, 0.999999));
    report->add_option("--truncation", c.truncation, "explicit truncation radius T");
    report->add_option("--j-max", c.j_max, "finest Haar level")->check(CLI::Range(0, 9));
    report->add_option("--terms", c.terms, "N marked as selected")->check(CLI::PositiveNumber);
    report->add_option("--m-factor", c.m_factor, "M = m_factor * N")->check(CLI::PositiveNumber);
    report->add_option("--count", c.count, "cosine coefficients listed")->check(CLI::PositiveNumber);
    report->add_option("--n-max", c.n_max, "largest N in the summary")->check(CLI::PositiveNumber);
    report->add_option("--output", c.output, "CSV path (default stdout)");

    auto* pre = app.add_subcommand("precompute", "filter through cached stacks");
    add_filter_opts(pre, true);
    pre->add_option("--radii", c.radii, "candidate T_r radii")->delimiter(',')->required();
    pre->add_option("--max-frequency", c.max_frequency, "highest cached frequency")->check(CLI::NonNegativeNumber);
    pre->add_option("input", c.input, "input PGM")->required();
    pre->add_option("output", c.output, "output PGM")->required();

    auto* synth = app.add_subcommand("synth", "write a seeded synthetic test image");
    synth->add_option("--width", c.width, "width")->check(CLI::Range(1, 16384));
    synth->add_option("--height", c.height, "height")->check(CLI::Range(1, 16384));
    synth->add_option("--seed", c.seed, "seed");
    synth->add_option("output", c.output, "output PGM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    c.method = method == "brute" ? Method::brute : method == "fast" ? Method::fast : Method::fast_lut;

    try {
        if (*filter) return cmd_filter(c, out);
        if (*bench) return cmd_bench(c, out);
        if (*report) return cmd_approx_report(c, out, err);
        if (*pre) return cmd_precompute(c, out);
        if (*synth) return cmd_synth(c);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace fastbf::cli

// Command-line front end for the saltbox-roof distribution library.
//
// Subcommands:
//   eval      print pdf/cdf/quantile at one point
//   sample    seeded inverse-transform samples as CSV (optional histogram)
//   space     rule-spaced points: an even probability grid through the quantile
//   curve     polygon approximation of a quadratic curve using rule-spaced x
//   domain    the admissible-region boundary c_limit(rho)
//   validate  explicit quantile vs. truncated-triangle oracle, max |diff|
//
// Exit codes: 0 success, 1 validation tolerance breach, 2 usage/domain error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "saltbox/saltbox.hpp"

namespace {

constexpr double validate_tolerance = 1e-7;

// Shortest decimal form that parses back to the identical double; locale-free.
std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// CSV goes to a temp file first and is renamed into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::optional<std::string>& out_path, const std::string& content) {
    if (out_path) {
        write_file_atomic(*out_path, content);
    } else {
        std::cout << content;
    }
}

double parse_double(const std::string& text, const std::string& what) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw saltbox::DomainViolation(what + ": not a number: '" + text + "'");
    }
    return v;
}

// Flat key/value spec document: one `key = value` per line, keys a, b, c,
// shape; '#' starts a comment; unknown keys are rejected.
struct SpecDocument {
    std::optional<double> a, b, c, shape;
};

std::string trim(const std::string& s) {
    const auto l = s.find_first_not_of(" \t\r");
    if (l == std::string::npos) return "";
    const auto r = s.find_last_not_of(" \t\r");
    return s.substr(l, r - l + 1);
}

SpecDocument read_spec_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw saltbox::DomainViolation("cannot open spec file: " + path);
    }
    SpecDocument doc;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw saltbox::DomainViolation(path + ":" + std::to_string(line_no) +
                                           ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "a") {
            doc.a = parse_double(value, path + ": a");
        } else if (key == "b") {
            doc.b = parse_double(value, path + ": b");
        } else if (key == "c") {
            doc.c = parse_double(value, path + ": c");
        } else if (key == "shape") {
            doc.shape = parse_double(value, path + ": shape");
        } else {
            throw saltbox::DomainViolation(path + ":" + std::to_string(line_no) +
                                           ": unknown key '" + key + "'");
        }
    }
    return doc;
}

// Distribution options shared by the subcommands; flags override the file.
struct DistCli {
    std::string spec_path;
    double a = 0.0, b = 0.0, c = 0.0, shape = 0.0;
    CLI::Option* opt_spec = nullptr;
    CLI::Option* opt_a = nullptr;
    CLI::Option* opt_b = nullptr;
    CLI::Option* opt_c = nullptr;
    CLI::Option* opt_shape = nullptr;

    void attach(CLI::App* cmd) {
        opt_spec = cmd->add_option("--spec", spec_path, "spec file (keys a, b, c, shape)");
        opt_a = cmd->add_option("--a", a, "lower limit");
        opt_b = cmd->add_option("--b", b, "upper limit");
        opt_c = cmd->add_option("--c", c, "mode location");
        opt_shape = cmd->add_option("--shape", shape, "shape factor in [0, 1]");
    }

    saltbox::RoofParams params() const {
        SpecDocument doc;
        if (opt_spec->count() > 0) doc = read_spec_file(spec_path);
        if (opt_a->count() > 0) doc.a = a;
        if (opt_b->count() > 0) doc.b = b;
        if (opt_c->count() > 0) doc.c = c;
        if (opt_shape->count() > 0) doc.shape = shape;
        if (!doc.a || !doc.b || !doc.c || !doc.shape) {
            throw saltbox::DomainViolation(
                "distribution underspecified: need a, b, c, shape via --spec or flags");
        }
        return saltbox::RoofParams{*doc.a, *doc.b, *doc.c, *doc.shape};
    }
};

std::string csv_of_column(const char* header, const std::vector<double>& values) {
    std::ostringstream os;
    os << header << "\n";
    for (double v : values) os << format_double(v) << "\n";
    return os.str();
}

// Rule-spaced points: an inclusive even grid u_i = i/(n-1) through the
// quantile of the distribution's unit shape, mapped onto [x_m, x_M].
std::vector<double> spaced_points(const saltbox::RoofParams& params, std::size_t n,
                                  double x_m, double x_M) {
    if (n < 2) {
        throw saltbox::DomainViolation("space requires n >= 2");
    }
    if (!(x_m < x_M)) {
        throw saltbox::DomainViolation("interval requires x_m < x_M");
    }
    const saltbox::UnitShape us = saltbox::to_unit(params);
    const saltbox::ResolvedSaltbox unit =
        saltbox::resolve(saltbox::RoofParams{0.0, 1.0, us.c_hat, us.rho_hat});
    std::vector<double> pts(n);
    pts.front() = x_m;
    pts.back() = x_M;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double u = static_cast<double>(i) / static_cast<double>(n - 1);
        double x = x_m + (x_M - x_m) * saltbox::quantile(unit, u);
        if (x < x_m) x = x_m;
        if (x > x_M) x = x_M;
        pts[i] = x;
    }
    return pts;
}

double curvature(double x, double a1, double a2) {
    saltbox::detail::require_finite(x, "x");
    const double slope = 2.0 * a2 * x + a1;
    return 2.0 * a2 / std::pow(1.0 + slope * slope, 1.5);
}

int run(int argc, char** argv) {
    CLI::App app{"saltbox-roof distribution toolkit"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate pdf, cdf or quantile at a point");
    DistCli eval_dist;
    eval_dist.attach(eval_cmd);
    std::string eval_op;
    double eval_arg = 0.0;
    eval_cmd->add_option("op", eval_op, "pdf | cdf | quantile")
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "quantile"}));
    eval_cmd->add_option("value", eval_arg, "x for pdf/cdf, u in [0,1] for quantile")->required();

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "write n seeded samples as CSV");
    DistCli sample_dist;
    sample_dist.attach(sample_cmd);
    std::size_t sample_n = 0;
    std::uint64_t sample_seed = 0;
    std::string sample_out;
    std::size_t sample_bins = 0;
    sample_cmd->add_option("--n", sample_n, "number of samples")->required();
    sample_cmd->add_option("--seed", sample_seed, "generator seed (default 0)");
    sample_cmd->add_option("--out", sample_out, "output CSV path")->required();
    auto* bins_opt = sample_cmd->add_option("--bins", sample_bins,
                                            "also write <out-stem>.hist.csv with this many bins");

    // space
    auto* space_cmd = app.add_subcommand("space", "rule-spaced points on an interval");
    DistCli space_dist;
    space_dist.attach(space_cmd);
    std::size_t space_n = 0;
    std::vector<double> space_interval{0.0, 1.0};
    std::string space_out;
    space_cmd->add_option("--n", space_n, "number of points (>= 2)")->required();
    space_cmd->add_option("--interval", space_interval, "x_m,x_M (default 0,1)")
        ->expected(2)
        ->delimiter(',');
    auto* space_out_opt = space_cmd->add_option("--out", space_out, "output CSV (stdout if omitted)");

    // curve
    auto* curve_cmd = app.add_subcommand("curve", "quadratic curve sampled at rule-spaced x");
    DistCli curve_dist;
    curve_dist.attach(curve_cmd);
    std::size_t curve_n = 0;
    std::vector<double> curve_interval;
    std::vector<double> curve_poly;
    std::string curve_out;
    curve_cmd->add_option("--n", curve_n, "number of points (>= 2)")->required();
    curve_cmd->add_option("--interval", curve_interval, "x_m,x_M")->expected(2)->delimiter(',')->required();
    curve_cmd->add_option("--poly", curve_poly, "a0,a1,a2 of y = a2 x^2 + a1 x + a0")
        ->expected(3)
        ->delimiter(',')
        ->required();
    auto* curve_out_opt = curve_cmd->add_option("--out", curve_out, "output CSV (stdout if omitted)");

    // domain
    auto* domain_cmd = app.add_subcommand("domain", "admissible-region boundary c_limit(rho)");
    double domain_rho = 0.0;
    std::size_t domain_grid = 0;
    std::string domain_out;
    auto* rho_opt = domain_cmd->add_option("--rho", domain_rho, "print c_limit at this rho");
    auto* grid_opt = domain_cmd->add_option("--grid", domain_grid, "emit k boundary rows (k >= 2)");
    auto* domain_out_opt = domain_cmd->add_option("--out", domain_out, "output CSV (stdout if omitted)");
    rho_opt->excludes(grid_opt);

    // validate
    auto* validate_cmd = app.add_subcommand("validate",
                                            "explicit quantile vs. truncated-triangle oracle");
    DistCli validate_dist;
    validate_dist.attach(validate_cmd);
    std::size_t validate_n = 0;
    std::uint64_t validate_seed = 0;
    std::string validate_out;
    validate_cmd->add_option("--n", validate_n, "number of probabilities (>= 1)")->required();
    validate_cmd->add_option("--seed", validate_seed, "generator seed (default 0)");
    auto* validate_out_opt = validate_cmd->add_option("--out", validate_out, "per-u CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return 2;
    }

    if (eval_cmd->parsed()) {
        const saltbox::ResolvedSaltbox dist = saltbox::resolve(eval_dist.params());
        double value = 0.0;
        if (eval_op == "pdf") {
            value = saltbox::pdf(dist, eval_arg);
        } else if (eval_op == "cdf") {
            value = saltbox::cdf(dist, eval_arg);
        } else {
            value = saltbox::quantile(dist, eval_arg);
        }
        std::cout << format_double(value) << "\n";
        return 0;
    }

    if (sample_cmd->parsed()) {
        const saltbox::ResolvedSaltbox dist = saltbox::resolve(sample_dist.params());
        const std::vector<double> xs = saltbox::sample(dist, sample_seed, sample_n);
        write_file_atomic(sample_out, csv_of_column("x", xs));
        if (bins_opt->count() > 0) {
            if (sample_bins == 0) {
                throw saltbox::DomainViolation("--bins must be >= 1");
            }
            const double width = (dist.b - dist.a) / static_cast<double>(sample_bins);
            std::vector<std::size_t> counts(sample_bins, 0);
            for (double x : xs) {
                auto j = static_cast<std::size_t>((x - dist.a) / width);
                if (j >= sample_bins) j = sample_bins - 1;
                ++counts[j];
            }
            std::ostringstream os;
            os << "bin_lo,bin_hi,count\n";
            for (std::size_t j = 0; j < sample_bins; ++j) {
                const double lo = dist.a + static_cast<double>(j) * width;
                const double hi = j + 1 == sample_bins ? dist.b
                                                       : dist.a + static_cast<double>(j + 1) * width;
                os << format_double(lo) << "," << format_double(hi) << "," << counts[j] << "\n";
            }
            std::filesystem::path hist_path(sample_out);
            hist_path.replace_extension(".hist.csv");
            write_file_atomic(hist_path, os.str());
        }
        return 0;
    }

    if (space_cmd->parsed()) {
        const std::vector<double> pts =
            spaced_points(space_dist.params(), space_n, space_interval[0], space_interval[1]);
        emit(space_out_opt->count() > 0 ? std::optional<std::string>(space_out) : std::nullopt,
             csv_of_column("x", pts));
        return 0;
    }

    if (curve_cmd->parsed()) {
        const double a0 = curve_poly[0];
        const double a1 = curve_poly[1];
        const double a2 = curve_poly[2];
        const std::vector<double> xs =
            spaced_points(curve_dist.params(), curve_n, curve_interval[0], curve_interval[1]);
        std::ostringstream os;
        os << "x,y,curvature\n";
        for (double x : xs) {
            const double y = a2 * x * x + a1 * x + a0;
            os << format_double(x) << "," << format_double(y) << ","
               << format_double(curvature(x, a1, a2)) << "\n";
        }
        emit(curve_out_opt->count() > 0 ? std::optional<std::string>(curve_out) : std::nullopt,
             os.str());
        return 0;
    }

    if (domain_cmd->parsed()) {
        if (rho_opt->count() > 0) {
            std::cout << format_double(saltbox::c_limit(domain_rho)) << "\n";
            return 0;
        }
        if (grid_opt->count() == 0) {
            throw saltbox::DomainViolation("domain requires --rho or --grid");
        }
        if (domain_grid < 2) {
            throw saltbox::DomainViolation("--grid must be >= 2");
        }
        std::ostringstream os;
        os << "rho,c_limit\n";
        for (std::size_t i = 0; i < domain_grid; ++i) {
            const double rho = static_cast<double>(i) / static_cast<double>(domain_grid - 1);
            os << format_double(rho) << "," << format_double(saltbox::c_limit(rho)) << "\n";
        }
        emit(domain_out_opt->count() > 0 ? std::optional<std::string>(domain_out) : std::nullopt,
             os.str());
        return 0;
    }

    if (validate_cmd->parsed()) {
        if (validate_n < 1) {
            throw saltbox::DomainViolation("validate requires --n >= 1");
        }
        const saltbox::ResolvedSaltbox dist = saltbox::resolve(validate_dist.params());

        // Same routing as compare_quantiles, kept per-u so the CSV can show both paths.
        std::function<double(double)> oracle;
        try {
            const saltbox::TriangularSupport support{
                dist.a,
                saltbox::apex_from_heights(dist.a, dist.b, dist.c, dist.h_c, dist.h_b),
                dist.c};
            const saltbox::TruncationWindow window =
                saltbox::make_window(support, dist.a, dist.b);
            oracle = [support, window](double u) {
                return saltbox::truncated_quantile(support, window, u);
            };
        } catch (const saltbox::FlatShape&) {
            const saltbox::FamilyParams fallback = saltbox::shed_flat(dist.a, dist.b, dist.c);
            oracle = [fallback](double u) { return saltbox::family_quantile(fallback, u); };
        }

        saltbox::SplitMix64 rng(validate_seed);
        std::ostringstream os;
        os << "u,explicit,oracle,abs_diff\n";
        double worst = 0.0;
        for (std::size_t i = 0; i < validate_n; ++i) {
            const double u = rng.next_double();
            const double explicit_x = saltbox::quantile(dist, u);
            const double oracle_x = oracle(u);
            const double diff = std::abs(explicit_x - oracle_x);
            if (diff > worst) worst = diff;
            os << format_double(u) << "," << format_double(explicit_x) << ","
               << format_double(oracle_x) << "," << format_double(diff) << "\n";
        }
        if (validate_out_opt->count() > 0) {
            write_file_atomic(validate_out, os.str());
        }
        std::cout << format_double(worst) << "\n";
        return worst <= validate_tolerance ? 0 : 1;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const saltbox::SaltboxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

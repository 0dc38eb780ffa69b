#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "saltbox/errors.hpp"

namespace saltbox {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

template <class F>
double adaptive_simpson(F& f, double a, double m, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, double& err_accum,
                        std::size_t& evals) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    evals += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        err_accum += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw NoConvergence("adaptive Simpson failed to converge within the depth limit");
    }
    return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err_accum, evals) +
           adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err_accum, evals);
}

template <class F>
void integrate_panel(F& f, double a, double b, double tol, int max_depth, QuadratureResult& acc) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    acc.evaluations += 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    acc.value += adaptive_simpson(f, a, m, b, fa, fm, fb, whole, tol, max_depth,
                                  acc.error_estimate, acc.evaluations);
}

} // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi]. Interior breakpoints
/// split the range into panels integrated independently, so integrands with
/// kinks (a piecewise-linear density, say) converge at full order; callers
/// must pass the kink locations. Exact to round-off on polynomials of
/// degree <= 3 per panel. Throws NoConvergence past max_depth subdivisions.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double tol,
                           const std::vector<double>& breakpoints = {}, int max_depth = 50) {
    if (!(lo <= hi)) {
        throw DomainViolation("integrate requires lo <= hi");
    }
    std::vector<double> cuts;
    cuts.push_back(lo);
    for (double c : breakpoints) {
        if (c > lo && c < hi) cuts.push_back(c);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    QuadratureResult result;
    const double total = hi - lo;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double panel_tol = total > 0.0 ? tol * (b - a) / total : tol;
        detail::integrate_panel(f, a, b, panel_tol, max_depth, result);
    }
    return result;
}

/// Central difference (F(x+h) - F(x-h)) / (2h).
template <class F>
double fd_derivative(F&& f, double x, double h) {
    if (!(h > 0.0)) {
        throw DomainViolation("fd_derivative requires h > 0");
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Deterministic bisection inverse of a non-decreasing F: returns x in
/// [lo, hi] with |F(x) - u| <= tol. The target must be bracketed by
/// F(lo) and F(hi).
template <class F>
double bisect_quantile(F&& f, double u, double lo, double hi, double tol) {
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (!(f_lo <= u && u <= f_hi)) {
        throw BracketViolation("u=" + std::to_string(u) + " not bracketed by [F(lo), F(hi)]");
    }
    if (u == f_lo) return lo;
    double mid = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
        mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (std::abs(f_mid - u) <= tol) return mid;
        if (f_mid < u) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= std::abs(mid) * 1e-17) break;
    }
    return mid;
}

/// Two-sided Kolmogorov-Smirnov statistic of an ascending-sorted sample
/// against the model CDF F: max over i of the larger of |i/n - F(x_i)| and
/// |(i-1)/n - F(x_i)|.
template <class F>
double ks_statistic(const std::vector<double>& sorted_samples, F&& cdf) {
    if (sorted_samples.empty()) {
        throw EmptySample("KS statistic of an empty sample");
    }
    const double n = static_cast<double>(sorted_samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double fx = cdf(sorted_samples[i]);
        const double hi = std::abs(static_cast<double>(i + 1) / n - fx);
        const double lo = std::abs(static_cast<double>(i) / n - fx);
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

/// k-th raw moment of a density by quadrature, k in {1, 2}; pass the
/// density's kink locations as breakpoints.
template <class F>
double moment_numeric(F&& pdf, double a, double b, int k,
                      const std::vector<double>& breakpoints = {}, double tol = 1e-12) {
    if (k != 1 && k != 2) {
        throw DomainViolation("moment order must be 1 or 2, got " + std::to_string(k));
    }
    auto integrand = [&](double x) {
        const double fx = pdf(x);
        return k == 1 ? x * fx : x * x * fx;
    };
    return integrate(integrand, a, b, tol, breakpoints).value;
}

} // namespace saltbox

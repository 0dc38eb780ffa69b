#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "saltbox/errors.hpp"
#include "saltbox/rng.hpp"

namespace saltbox {

// Tolerance policy, shared across the library.
inline constexpr double eps_domain = 1e-12; // slack on domain-membership tests
inline constexpr double eps_area   = 1e-12; // slack on unit-area / window-mass checks
inline constexpr double eps_flat   = 1e-9;  // relative height gap below which a roof counts as flat
inline constexpr double classify_tol_default = 1e-9;

/// User-facing parameterization of the saltbox-roof distribution:
/// support limits a < b, mode c in [a, b], and the dimensionless shape
/// factor in [0, 1] (0 = flat roof, 1 = gabled roof).
struct RoofParams {
    double a = 0.0;
    double b = 1.0;
    double c = 0.5;
    double shape = 0.5;
};

/// Resolved form every evaluator consumes: the density h_c at the mode and
/// the residual density h_b at the upper limit, both derived from the
/// parameters so that the roof enclosed area is exactly one.
struct ResolvedSaltbox {
    double a = 0.0;
    double b = 1.0;
    double c = 0.5;
    double h_c = 1.5; // density at the mode, units 1/x
    double h_b = 1.0; // residual density at b, units 1/x
};

/// Shape rescaled onto support [0, 1] with densities scaled by (b - a).
/// Validity and classification are decided here: a pair (c_hat, rho_hat) is
/// admissible iff c_hat <= c_limit = 2 - 2/(rho_hat + 1).
struct UnitShape {
    double c_hat = 0.0;   // relative mode, in [0, 1]
    double rho_hat = 0.0; // shape factor = hc_hat - 1, in [0, 1]
    double hc_hat = 1.0;  // mode density on the unit support, in [1, 2]
    double hb_hat = 1.0;  // residual density on the unit support, in [0, 2]
    double c_limit = 0.0; // largest admissible c_hat for this rho_hat
};

struct Moments {
    double mean = 0.0;
    double median = 0.0;
    double mode = 0.0;
    double variance = 0.0;
};

/// The seven roof shapes: the general saltbox plus its six degeneracies.
enum class RoofShapeKind {
    Uniform,    // flat roof: rho_hat = 0 (forces c_hat = 0)
    Triangular, // gabled roof: rho_hat = 1, interior mode
    LeftShed,   // right triangle with the peak at b: (c_hat, rho_hat) = (1, 1)
    RightShed,  // right triangle with the peak at a: (c_hat, rho_hat) = (0, 1)
    ShedFlat,   // ascending ramp + plateau: on the c_hat = c_limit boundary
    Skillion,   // vertical rise at a, descending line to h_b at b: c_hat = 0
    Saltbox,    // the general interior shape
};

inline const char* to_string(RoofShapeKind k) {
    switch (k) {
    case RoofShapeKind::Uniform:    return "uniform";
    case RoofShapeKind::Triangular: return "triangular";
    case RoofShapeKind::LeftShed:   return "left-shed";
    case RoofShapeKind::RightShed:  return "right-shed";
    case RoofShapeKind::ShedFlat:   return "shed-flat";
    case RoofShapeKind::Skillion:   return "skillion";
    case RoofShapeKind::Saltbox:    return "saltbox";
    }
    return "?";
}

namespace detail {

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x)) {
        throw NonFinite(std::string(name) + " must be a finite real, got " + std::to_string(x));
    }
}

} // namespace detail

/// Largest admissible relative mode for a given shape factor:
/// c_limit = 2 - 2/(rho_hat + 1). Monotone increasing, maps [0,1] onto [0,1].
inline double c_limit(double rho_hat) {
    detail::require_finite(rho_hat, "rho_hat");
    if (rho_hat < 0.0 || rho_hat > 1.0) {
        throw DomainViolation("rho_hat must lie in [0, 1], got " + std::to_string(rho_hat));
    }
    return 2.0 - 2.0 / (rho_hat + 1.0);
}

/// Shape factor on the shed-flat boundary for a given relative mode:
/// rho = 2/(2 - c_hat) - 1, the inverse of c_limit. c_hat = 1 maps to 1.
inline double rho_boundary(double c_hat) {
    detail::require_finite(c_hat, "c_hat");
    if (c_hat < 0.0 || c_hat > 1.0) {
        throw DomainViolation("c_hat must lie in [0, 1], got " + std::to_string(c_hat));
    }
    return 2.0 / (2.0 - c_hat) - 1.0;
}

/// Checks every parameter invariant; throws DomainViolation naming the
/// clause that failed.
inline void validate(const RoofParams& p) {
    detail::require_finite(p.a, "a");
    detail::require_finite(p.b, "b");
    detail::require_finite(p.c, "c");
    detail::require_finite(p.shape, "shape");
    if (!(p.a < p.b)) {
        throw DomainViolation("a < b required (zero-width support rejected): a=" +
                              std::to_string(p.a) + ", b=" + std::to_string(p.b));
    }
    if (p.c < p.a || p.c > p.b) {
        throw DomainViolation("c must lie in [a, b]: c=" + std::to_string(p.c));
    }
    if (p.shape < 0.0 || p.shape > 1.0) {
        throw DomainViolation("shape must lie in [0, 1]: shape=" + std::to_string(p.shape));
    }
    const double c_hat = (p.c - p.a) / (p.b - p.a);
    const double limit = 2.0 - 2.0 / (p.shape + 1.0);
    if (c_hat > limit + eps_domain) {
        throw DomainViolation("relative mode exceeds the admissible limit: c_hat=" +
                              std::to_string(c_hat) + " > c_limit(shape)=" + std::to_string(limit));
    }
}

/// Derives the roof heights from the parameters. h_c = (1 + shape)/(b - a);
/// h_b follows from the unit-area condition. At c = b the h_b formula is
/// 0/0 and h_b = 0 by convention (the left-shed limit).
inline ResolvedSaltbox resolve(const RoofParams& p) {
    validate(p);
    const double width = p.b - p.a;
    const double h_c = (1.0 + p.shape) / width;
    double h_b = 0.0;
    if (p.c < p.b) {
        h_b = (2.0 - width * h_c) / (p.b - p.c);
        // rounding guard: keep h_c >= h_b >= 0 exactly
        if (h_b < 0.0) h_b = 0.0;
        if (h_b > h_c) h_b = h_c;
    }
    return ResolvedSaltbox{p.a, p.b, p.c, h_c, h_b};
}

/// Hat-transform onto the unit support: c_hat = (c - a)/(b - a),
/// hc_hat = h_c (b - a) = shape + 1, hb_hat from the unit-area condition.
inline UnitShape to_unit(const RoofParams& p) {
    validate(p);
    UnitShape u;
    u.c_hat = (p.c - p.a) / (p.b - p.a);
    u.rho_hat = p.shape;
    u.hc_hat = p.shape + 1.0;
    if (u.c_hat < 1.0) {
        u.hb_hat = (2.0 - u.hc_hat) / (1.0 - u.c_hat);
        if (u.hb_hat < 0.0) u.hb_hat = 0.0;
        if (u.hb_hat > u.hc_hat) u.hb_hat = u.hc_hat;
    } else {
        u.hb_hat = 0.0;
    }
    u.c_limit = 2.0 - 2.0 / (u.rho_hat + 1.0);
    return u;
}

/// Names the shape at (c_hat, rho_hat). Corner cases win over edges, edges
/// over the interior, so e.g. (0, 0) is Uniform rather than ShedFlat even
/// though it also sits on the boundary curve.
inline RoofShapeKind classify(const UnitShape& u, double tol = classify_tol_default) {
    const bool rho_lo = u.rho_hat <= tol;
    const bool rho_hi = u.rho_hat >= 1.0 - tol;
    const bool c_lo = u.c_hat <= tol;
    const bool c_hi = u.c_hat >= 1.0 - tol;
    if (rho_lo && c_lo) return RoofShapeKind::Uniform;
    if (rho_hi && c_lo) return RoofShapeKind::RightShed;
    if (rho_hi && c_hi) return RoofShapeKind::LeftShed;
    if (rho_hi) return RoofShapeKind::Triangular;
    if (c_lo) return RoofShapeKind::Skillion;
    if (std::abs(u.c_hat - u.c_limit) <= tol) return RoofShapeKind::ShedFlat;
    return RoofShapeKind::Saltbox;
}

/// Density. Ascending line from (a, 0) to (c, h_c), descending line from
/// (c, h_c) to (b, h_b); zero outside [a, b]. Both branches meet at h_c.
inline double pdf(const ResolvedSaltbox& d, double x) {
    detail::require_finite(x, "x");
    if (x < d.a || x > d.b) return 0.0;
    if (x == d.c) return d.h_c;
    if (x < d.c) return d.h_c * (x - d.a) / (d.c - d.a);
    return d.h_c - (d.h_c - d.h_b) * (x - d.c) / (d.b - d.c);
}

/// Probability mass at the mode, F(c) = (c - a) h_c / 2.
inline double cdf_at_mode(const ResolvedSaltbox& d) {
    return 0.5 * (d.c - d.a) * d.h_c;
}

/// Cumulative distribution. Quadratic ramp h_c (x-a)^2 / (2(c-a)) up to the
/// mode, then F(c) plus the trapezoid under the descending line.
inline double cdf(const ResolvedSaltbox& d, double x) {
    detail::require_finite(x, "x");
    if (x <= d.a) return 0.0;
    if (x >= d.b) return 1.0;
    if (x <= d.c) {
        return d.h_c * (x - d.a) * (x - d.a) / (2.0 * (d.c - d.a));
    }
    const double s = x - d.c;
    const double f = cdf_at_mode(d) + s * d.h_c - s * s * (d.h_c - d.h_b) / (2.0 * (d.b - d.c));
    return f < 1.0 ? f : 1.0;
}

/// Quantile (inverse CDF). The ascending branch inverts to
/// a + sqrt(2 u (c-a)/h_c). The descending branch solves
///   F(c) + s h_c - s^2 k / 2 = u,   k = (h_c - h_b)/(b - c),  s = x - c
/// taking the root in [c, b] in the cancellation-free form
///   s = 2 v / (h_c + sqrt(h_c^2 - 2 k v)),   v = u - F(c),
/// which degrades gracefully to the linear plateau inverse s = v / h_c as
/// k -> 0 (taken verbatim when h_c - h_b < eps_flat * h_c).
inline double quantile(const ResolvedSaltbox& d, double u) {
    detail::require_finite(u, "u");
    if (u < 0.0 || u > 1.0) {
        throw DomainViolation("u must lie in [0, 1], got " + std::to_string(u));
    }
    if (u == 0.0) return d.a;
    if (u == 1.0) return d.b;
    const double f_c = cdf_at_mode(d);
    if (u <= f_c) {
        const double x = d.a + std::sqrt(2.0 * u * (d.c - d.a) / d.h_c);
        return x < d.c ? x : d.c;
    }
    const double v = u - f_c;
    double s;
    if (d.h_c - d.h_b < eps_flat * d.h_c) {
        s = v / d.h_c;
    } else {
        const double k = (d.h_c - d.h_b) / (d.b - d.c);
        double disc = d.h_c * d.h_c - 2.0 * k * v;
        if (disc < 0.0) disc = 0.0; // u -> 1 rounding
        s = 2.0 * v / (d.h_c + std::sqrt(disc));
    }
    const double x = d.c + s;
    return x < d.b ? x : d.b;
}

/// Mean: mu = -(a - b)^2 h_c / 6 + c/3 + 2b/3.
inline double mean(const ResolvedSaltbox& d) {
    const double w = d.a - d.b;
    return -w * w * d.h_c / 6.0 + d.c / 3.0 + 2.0 * d.b / 3.0;
}

/// Variance: (1/36) [ 2(c-b)^2 + (c - 3a + 2b)(a-b)^2 h_c - (a-b)^4 h_c^2 ].
inline double variance(const ResolvedSaltbox& d) {
    const double w2 = (d.a - d.b) * (d.a - d.b);
    const double cb = d.c - d.b;
    return (2.0 * cb * cb + (d.c - 3.0 * d.a + 2.0 * d.b) * w2 * d.h_c -
            w2 * w2 * d.h_c * d.h_c) / 36.0;
}

/// The mode is the parameter c itself.
inline double mode(const ResolvedSaltbox& d) {
    return d.c;
}

/// Median, computed as quantile(1/2). The ascending-branch closed form
/// a + sqrt((c-a)/h_c) only applies when (c-a) h_c >= 1, so the quantile
/// route is used unconditionally.
inline double median(const ResolvedSaltbox& d) {
    return quantile(d, 0.5);
}

inline Moments moments(const ResolvedSaltbox& d) {
    return Moments{mean(d), median(d), mode(d), variance(d)};
}

/// n inverse-transform samples driven by SplitMix64(seed); the same (seed, n)
/// always reproduces the same sequence. Every value lies in [a, b].
inline std::vector<double> sample(const ResolvedSaltbox& d, std::uint64_t seed, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(quantile(d, rng.next_double()));
    }
    return out;
}

} // namespace saltbox

#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "saltbox/errors.hpp"
#include "saltbox/family.hpp"
#include "saltbox/rng.hpp"
#include "saltbox/roof.hpp"

namespace saltbox {

/// The un-truncated triangle the oracle works on: support [d, e] with apex
/// at c. For the saltbox use-case d = a and e extends beyond b.
struct TriangularSupport {
    double d = 0.0;
    double e = 1.0;
    double c = 0.5;
};

/// A truncation window [lo, hi] together with the parent CDF mass at its
/// ends, G_lo = G(lo) and G_hi = G(hi).
struct TruncationWindow {
    double lo = 0.0;
    double hi = 1.0;
    double G_lo = 0.0;
    double G_hi = 1.0;
};

inline void validate(const TriangularSupport& s) {
    detail::require_finite(s.d, "d");
    detail::require_finite(s.e, "e");
    detail::require_finite(s.c, "c");
    if (!(s.d <= s.c && s.c < s.e)) {
        throw DomainViolation("triangular support requires d <= c < e");
    }
}

/// Recovers the far vertex of the un-truncated triangle from the two roof
/// heights by similar triangles: e = (h_c b - h_b c)/(h_c - h_b).
/// Near h_c = h_b the apex runs off to infinity; FlatShape tells the caller
/// to use the shed-flat closed form instead.
inline double apex_from_heights(double a, double b, double c, double h_c, double h_b) {
    if (!(a <= c && c < b)) {
        throw DomainViolation("apex recovery requires a <= c < b");
    }
    if (!(h_c > 0.0) || h_b < 0.0) {
        throw DomainViolation("apex recovery requires h_c > 0 and h_b >= 0");
    }
    if (h_c - h_b < eps_flat * h_c) {
        throw FlatShape("h_c and h_b are equal to within tolerance; no finite apex");
    }
    return (h_c * b - h_b * c) / (h_c - h_b);
}

/// Triangular density on [d, e] with apex c.
inline double tri_pdf(const TriangularSupport& s, double x) {
    validate(s);
    detail::require_finite(x, "x");
    if (x < s.d || x > s.e) return 0.0;
    const double w = s.e - s.d;
    if (x == s.c) return 2.0 / w;
    if (x < s.c) return 2.0 * (x - s.d) / (w * (s.c - s.d));
    return 2.0 * (s.e - x) / (w * (s.e - s.c));
}

/// Triangular CDF on [d, e] with apex c.
inline double tri_cdf(const TriangularSupport& s, double x) {
    validate(s);
    detail::require_finite(x, "x");
    if (x <= s.d) return 0.0;
    if (x >= s.e) return 1.0;
    const double w = s.e - s.d;
    if (x <= s.c) return (x - s.d) * (x - s.d) / (w * (s.c - s.d));
    return 1.0 - (s.e - x) * (s.e - x) / (w * (s.e - s.c));
}

/// Triangular quantile on [d, e] with apex c.
inline double tri_quantile(const TriangularSupport& s, double u) {
    validate(s);
    detail::require_finite(u, "u");
    if (u < 0.0 || u > 1.0) {
        throw DomainViolation("u must lie in [0, 1], got " + std::to_string(u));
    }
    if (u == 0.0) return s.d;
    if (u == 1.0) return s.e;
    const double w = s.e - s.d;
    const double f_c = (s.c - s.d) / w;
    if (u <= f_c) {
        const double x = s.d + std::sqrt(u * w * (s.c - s.d));
        return x < s.c ? x : s.c;
    }
    const double x = s.e - std::sqrt((1.0 - u) * w * (s.e - s.c));
    return x > s.c ? x : s.c;
}

/// Builds the window [lo, hi] over the triangle, capturing G(lo) and G(hi).
inline TruncationWindow make_window(const TriangularSupport& s, double lo, double hi) {
    if (!(lo < hi)) {
        throw DomainViolation("truncation window requires lo < hi");
    }
    TruncationWindow w{lo, hi, tri_cdf(s, lo), tri_cdf(s, hi)};
    if (w.G_hi - w.G_lo < eps_area) {
        throw DegenerateWindow("truncation window carries no probability mass");
    }
    return w;
}

/// Truncated CDF: (G(x) - G(lo)) / (G(hi) - G(lo)), clamped to [0, 1].
inline double truncated_cdf(const TriangularSupport& s, const TruncationWindow& win, double x) {
    detail::require_finite(x, "x");
    if (win.G_hi - win.G_lo < eps_area) {
        throw DegenerateWindow("truncation window carries no probability mass");
    }
    if (x <= win.lo) return 0.0;
    if (x >= win.hi) return 1.0;
    double f = (tri_cdf(s, x) - win.G_lo) / (win.G_hi - win.G_lo);
    if (f < 0.0) f = 0.0;
    if (f > 1.0) f = 1.0;
    return f;
}

/// Truncated density: g(x)/(G(hi) - G(lo)) inside the window, 0 outside.
inline double truncated_pdf(const TriangularSupport& s, const TruncationWindow& win, double x) {
    detail::require_finite(x, "x");
    if (win.G_hi - win.G_lo < eps_area) {
        throw DegenerateWindow("truncation window carries no probability mass");
    }
    if (x < win.lo || x > win.hi) return 0.0;
    return tri_pdf(s, x) / (win.G_hi - win.G_lo);
}

/// Truncated quantile: G^-1 evaluated at G(lo) + u (G(hi) - G(lo)). With
/// G(lo) = 0 this reduces bit-for-bit to the one-sided form G^-1(u G(hi)).
inline double truncated_quantile(const TriangularSupport& s, const TruncationWindow& win, double u) {
    detail::require_finite(u, "u");
    if (u < 0.0 || u > 1.0) {
        throw DomainViolation("u must lie in [0, 1], got " + std::to_string(u));
    }
    if (win.G_hi - win.G_lo < eps_area) {
        throw DegenerateWindow("truncation window carries no probability mass");
    }
    if (u == 0.0) return win.lo;
    if (u == 1.0) return win.hi;
    double x = tri_quantile(s, win.G_lo + u * (win.G_hi - win.G_lo));
    if (x < win.lo) x = win.lo;
    if (x > win.hi) x = win.hi;
    return x;
}

/// Feeds n seeded probabilities through both inverse CDFs, the explicit
/// saltbox quantile and the truncated-triangle path, and reports the largest
/// absolute difference. On a flat roof (no finite apex) the oracle side is
/// the shed-flat closed form instead.
inline double compare_quantiles(const ResolvedSaltbox& dist, std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    double worst = 0.0;
    bool flat = false;
    TriangularSupport support;
    TruncationWindow window;
    try {
        support = TriangularSupport{dist.a, apex_from_heights(dist.a, dist.b, dist.c,
                                                              dist.h_c, dist.h_b),
                                    dist.c};
        window = make_window(support, dist.a, dist.b);
    } catch (const FlatShape&) {
        flat = true;
    }
    const FamilyParams fallback = shed_flat(dist.a, dist.b, dist.c);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double();
        const double explicit_x = quantile(dist, u);
        const double oracle_x = flat ? family_quantile(fallback, u)
                                     : truncated_quantile(support, window, u);
        const double diff = std::abs(explicit_x - oracle_x);
        if (diff > worst) worst = diff;
    }
    return worst;
}

} // namespace saltbox

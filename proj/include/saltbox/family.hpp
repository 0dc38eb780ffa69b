#pragma once

#include <cmath>
#include <string>

#include "saltbox/errors.hpp"
#include "saltbox/roof.hpp"

namespace saltbox {

/// Parameters of one of the six degenerate roof distributions. `c` is read
/// only by Triangular and ShedFlat, `h_c` only by Skillion; the others need
/// just the support.
struct FamilyParams {
    RoofShapeKind kind = RoofShapeKind::Uniform;
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;   // mode, where the kind uses one
    double h_c = 0.0; // initial height, skillion only
};

/// Shed-flat plateau height h_p = 2/(2b - a - c) and the uniform reference
/// height h_r = 1/(b - a).
struct PlateauHeight {
    double h_p = 0.0;
    double h_r = 0.0;
};

inline PlateauHeight plateau_height(double a, double b, double c) {
    return PlateauHeight{2.0 / (2.0 * b - a - c), 1.0 / (b - a)};
}

inline FamilyParams uniform(double a, double b) {
    return FamilyParams{RoofShapeKind::Uniform, a, b, 0.0, 0.0};
}
inline FamilyParams triangular(double a, double b, double c) {
    return FamilyParams{RoofShapeKind::Triangular, a, b, c, 0.0};
}
inline FamilyParams left_shed(double a, double b) {
    return FamilyParams{RoofShapeKind::LeftShed, a, b, 0.0, 0.0};
}
inline FamilyParams right_shed(double a, double b) {
    return FamilyParams{RoofShapeKind::RightShed, a, b, 0.0, 0.0};
}
inline FamilyParams shed_flat(double a, double b, double c) {
    return FamilyParams{RoofShapeKind::ShedFlat, a, b, c, 0.0};
}
inline FamilyParams skillion(double a, double b, double h_c) {
    return FamilyParams{RoofShapeKind::Skillion, a, b, 0.0, h_c};
}

inline void validate(const FamilyParams& p) {
    detail::require_finite(p.a, "a");
    detail::require_finite(p.b, "b");
    if (!(p.a < p.b)) {
        throw DomainViolation("a < b required: a=" + std::to_string(p.a) +
                              ", b=" + std::to_string(p.b));
    }
    switch (p.kind) {
    case RoofShapeKind::Uniform:
    case RoofShapeKind::LeftShed:
    case RoofShapeKind::RightShed:
        break;
    case RoofShapeKind::Triangular:
    case RoofShapeKind::ShedFlat:
        detail::require_finite(p.c, "c");
        if (p.c < p.a || p.c > p.b) {
            throw DomainViolation("c must lie in [a, b]: c=" + std::to_string(p.c));
        }
        break;
    case RoofShapeKind::Skillion: {
        detail::require_finite(p.h_c, "h_c");
        const double w = p.b - p.a;
        if (p.h_c < 1.0 / w - eps_domain || p.h_c > 2.0 / w + eps_domain) {
            throw DomainViolation("skillion h_c must lie in [1/(b-a), 2/(b-a)]: h_c=" +
                                  std::to_string(p.h_c));
        }
        break;
    }
    case RoofShapeKind::Saltbox:
        throw DomainViolation("the general saltbox shape is not a family member");
    }
}

namespace detail {

inline double skillion_hb(double a, double b, double h_c) {
    double h_b = (2.0 - h_c * (b - a)) / (b - a);
    if (h_b < 0.0) h_b = 0.0;
    return h_b;
}

} // namespace detail

/// Closed-form density of the given family member; zero outside [a, b].
inline double family_pdf(const FamilyParams& p, double x) {
    validate(p);
    detail::require_finite(x, "x");
    if (x < p.a || x > p.b) return 0.0;
    const double w = p.b - p.a;
    switch (p.kind) {
    case RoofShapeKind::Uniform:
        return 1.0 / w;
    case RoofShapeKind::Triangular:
        if (x == p.c) return 2.0 / w;
        if (x < p.c) return 2.0 * (x - p.a) / (w * (p.c - p.a));
        return 2.0 * (p.b - x) / (w * (p.b - p.c));
    case RoofShapeKind::LeftShed:
        return 2.0 * (x - p.a) / (w * w);
    case RoofShapeKind::RightShed:
        return 2.0 * (p.b - x) / (w * w);
    case RoofShapeKind::ShedFlat: {
        const double h_p = plateau_height(p.a, p.b, p.c).h_p;
        if (x >= p.c) return h_p;
        return h_p * (x - p.a) / (p.c - p.a);
    }
    case RoofShapeKind::Skillion: {
        const double h_b = detail::skillion_hb(p.a, p.b, p.h_c);
        return p.h_c - (p.h_c - h_b) * (x - p.a) / w;
    }
    default:
        return 0.0;
    }
}

/// Closed-form CDF, re-derived by integrating the densities above.
inline double family_cdf(const FamilyParams& p, double x) {
    validate(p);
    detail::require_finite(x, "x");
    if (x <= p.a) return 0.0;
    if (x >= p.b) return 1.0;
    const double w = p.b - p.a;
    switch (p.kind) {
    case RoofShapeKind::Uniform:
        return (x - p.a) / w;
    case RoofShapeKind::Triangular:
        if (x <= p.c) return (x - p.a) * (x - p.a) / (w * (p.c - p.a));
        return 1.0 - (p.b - x) * (p.b - x) / (w * (p.b - p.c));
    case RoofShapeKind::LeftShed: {
        const double t = (x - p.a) / w;
        return t * t;
    }
    case RoofShapeKind::RightShed: {
        const double t = (p.b - x) / w;
        return 1.0 - t * t;
    }
    case RoofShapeKind::ShedFlat: {
        const double h_p = plateau_height(p.a, p.b, p.c).h_p;
        if (x <= p.c) return h_p * (x - p.a) * (x - p.a) / (2.0 * (p.c - p.a));
        const double f = 0.5 * h_p * (p.c - p.a) + h_p * (x - p.c);
        return f < 1.0 ? f : 1.0;
    }
    case RoofShapeKind::Skillion: {
        const double h_b = detail::skillion_hb(p.a, p.b, p.h_c);
        const double s = x - p.a;
        const double f = p.h_c * s - (p.h_c - h_b) * s * s / (2.0 * w);
        return f < 1.0 ? f : 1.0;
    }
    default:
        return 0.0;
    }
}

/// Closed-form quantile; endpoints are returned exactly so sqrt rounding
/// never overshoots the support.
inline double family_quantile(const FamilyParams& p, double u) {
    validate(p);
    detail::require_finite(u, "u");
    if (u < 0.0 || u > 1.0) {
        throw DomainViolation("u must lie in [0, 1], got " + std::to_string(u));
    }
    if (u == 0.0) return p.a;
    if (u == 1.0) return p.b;
    const double w = p.b - p.a;
    double x = p.a;
    switch (p.kind) {
    case RoofShapeKind::Uniform:
        x = p.a + u * w;
        break;
    case RoofShapeKind::Triangular: {
        const double f_c = (p.c - p.a) / w;
        if (u <= f_c) {
            x = p.a + std::sqrt(u * w * (p.c - p.a));
            if (x > p.c) x = p.c;
        } else {
            x = p.b - std::sqrt((1.0 - u) * w * (p.b - p.c));
            if (x < p.c) x = p.c;
        }
        break;
    }
    case RoofShapeKind::LeftShed:
        x = p.a + std::sqrt(u) * w;
        break;
    case RoofShapeKind::RightShed:
        x = p.b - w * std::sqrt(1.0 - u);
        break;
    case RoofShapeKind::ShedFlat: {
        const double h_p = plateau_height(p.a, p.b, p.c).h_p;
        const double f_c = 0.5 * h_p * (p.c - p.a);
        if (u <= f_c) {
            x = p.a + std::sqrt(2.0 * u * (p.c - p.a) / h_p);
            if (x > p.c) x = p.c;
        } else {
            x = p.c + (u - f_c) / h_p;
        }
        break;
    }
    case RoofShapeKind::Skillion: {
        const double h_b = detail::skillion_hb(p.a, p.b, p.h_c);
        if (p.h_c - h_b < eps_flat * p.h_c) {
            x = p.a + u / p.h_c;
        } else {
            const double k = (p.h_c - h_b) / w;
            double disc = p.h_c * p.h_c - 2.0 * k * u;
            if (disc < 0.0) disc = 0.0;
            x = p.a + 2.0 * u / (p.h_c + std::sqrt(disc));
        }
        break;
    }
    default:
        break;
    }
    if (x < p.a) x = p.a;
    if (x > p.b) x = p.b;
    return x;
}

} // namespace saltbox

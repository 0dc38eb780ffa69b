#include <doctest.h>

#include <cmath>

#include "saltbox/numverify.hpp"
#include "saltbox/truncation.hpp"
#include "test_support.hpp"

using namespace saltbox;
using testsupport::close_abs;
using testsupport::random_params;
using testsupport::reference_dist;

TEST_CASE("apex recovery by similar triangles") {
    CHECK(apex_from_heights(0.0, 1.0, 0.5, 1.5, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(apex_from_heights(0.0, 1.0, 0.5, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(apex_from_heights(0.0, 1.0, 0.5, 1.2, 1.2), FlatShape);
    CHECK_THROWS_AS(apex_from_heights(0.0, 1.0, 1.0, 1.5, 1.0), DomainViolation); // c = b
    CHECK_THROWS_AS(apex_from_heights(0.0, 1.0, 0.5, 0.0, 0.0), DomainViolation);
}

TEST_CASE("triangle closed forms on [d, e]") {
    const TriangularSupport s{0.0, 2.0, 0.5};
    CHECK(tri_cdf(s, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tri_cdf(s, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(tri_quantile(s, 0.0) == 0.0);
    CHECK(tri_quantile(s, 1.0) == 2.0);
    CHECK(tri_pdf(s, 0.5) == doctest::Approx(1.0).epsilon(1e-15)); // apex 2/(e-d)

    auto g = [&](double x) { return tri_pdf(s, x); };
    CHECK(close_abs(integrate(g, 0.0, 2.0, 1e-12, {s.c}).value, 1.0, 1e-12));
    for (int i = 0; i <= 100; ++i) {
        const double u = static_cast<double>(i) / 100.0;
        CHECK(close_abs(tri_cdf(s, tri_quantile(s, u)), u, 1e-12));
    }

    CHECK_THROWS_AS(tri_cdf(TriangularSupport{0.0, 1.0, 1.5}, 0.5), DomainViolation);
    CHECK_THROWS_AS(tri_quantile(s, -0.5), DomainViolation);
}

TEST_CASE("truncation theorems against the worked window") {
    const TriangularSupport s{0.0, 2.0, 0.5};
    const TruncationWindow win = make_window(s, 0.0, 1.0);
    CHECK(win.G_lo == 0.0);
    CHECK(win.G_hi == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK(truncated_cdf(s, win, 0.5) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(truncated_pdf(s, win, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(truncated_cdf(s, win, 1.0) == 1.0);
    CHECK(truncated_cdf(s, win, -0.5) == 0.0);
    CHECK(truncated_pdf(s, win, 1.5) == 0.0);

    CHECK(truncated_quantile(s, win, 0.71875) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(truncated_quantile(s, win, 0.0) == 0.0);
    CHECK(truncated_quantile(s, win, 1.0) == 1.0);

    // truncated density renormalizes to unit mass over the window
    auto f = [&](double x) { return truncated_pdf(s, win, x); };
    CHECK(close_abs(integrate(f, 0.0, 1.0, 1e-12, {s.c}).value, 1.0, 1e-10));
    for (int i = 0; i <= 100; ++i) {
        const double u = static_cast<double>(i) / 100.0;
        CHECK(close_abs(truncated_cdf(s, win, truncated_quantile(s, win, u)), u, 1e-9));
    }
}

TEST_CASE("a window with no mass is rejected") {
    const TriangularSupport s{0.0, 2.0, 0.5};
    CHECK_THROWS_AS(make_window(s, 2.0 - 1e-9, 2.0), DegenerateWindow);
    CHECK_THROWS_AS(make_window(s, 1.0, 1.0), DomainViolation); // lo < hi required
}

TEST_CASE("one-sided windows reduce exactly to the G^-1(u G(b)) form") {
    const TriangularSupport s{0.0, 2.0, 0.5};
    const TruncationWindow win = make_window(s, 0.0, 1.3);
    REQUIRE(win.G_lo == 0.0);
    SplitMix64 rng(4);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.next_double();
        // bitwise equality: the general rescaling must not perturb u * G_hi
        CHECK(truncated_quantile(s, win, u) == tri_quantile(s, u * win.G_hi));
    }
}

TEST_CASE("explicit quantile and oracle path agree on the reference distribution") {
    const ResolvedSaltbox d = reference_dist();
    CHECK(compare_quantiles(d, 50, 123) <= 1e-9);
    CHECK(compare_quantiles(d, 0, 123) == 0.0);
}

TEST_CASE("oracle equivalence across a random interior grid") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 60; ++trial) {
        const RoofParams p = random_params(rng);
        const UnitShape u = to_unit(p);
        const double gap = u.c_limit - u.c_hat;
        const double tol = gap < 1e-4 ? 1e-7 : 1e-9;
        CHECK(compare_quantiles(resolve(p), 50, 1000 + trial) <= tol);
    }
}

TEST_CASE("near the shed-flat boundary the widened tolerance holds") {
    // conditioning of apex recovery degrades as h_c -> h_b
    const double rho = 0.5;
    const double c_hat = saltbox::c_limit(rho) - 1e-6;
    const ResolvedSaltbox d = resolve(RoofParams{0.0, 1.0, c_hat, rho});
    CHECK(compare_quantiles(d, 200, 9) <= 1e-7);
}

TEST_CASE("on the boundary itself the shed-flat fallback takes over") {
    const double rho = 0.4;
    const double c_hat = saltbox::c_limit(rho);
    const ResolvedSaltbox d = resolve(RoofParams{0.0, 1.0, c_hat, rho});
    CHECK(compare_quantiles(d, 100, 11) <= 1e-9);

    // the uniform corner is flat too
    const ResolvedSaltbox flat = resolve(RoofParams{-1.0, 1.0, -1.0, 0.0});
    CHECK(compare_quantiles(flat, 100, 12) <= 1e-9);
}

TEST_CASE("oracle handles the skillion edge c = a") {
    const ResolvedSaltbox d = resolve(RoofParams{1.0, 3.0, 1.0, 0.7});
    CHECK(compare_quantiles(d, 100, 21) <= 1e-9);
}

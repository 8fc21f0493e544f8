#include "doctest.h"

#include "kacfta/ellipsoid.hpp"
#include "kacfta/errors.hpp"
#include "kacfta/kac.hpp"
#include "kacfta/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace kacfta;
using namespace kacfta::ellipsoids;
using spectra::interval_spectrum;
using spectra::make_spectrum;

namespace {

Ellipsoid random_ellipsoid2(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> uni(0.3, 2.0);
    std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
    double l1 = uni(eng), l2 = uni(eng), t = ang(eng);
    double c = std::cos(t), s = std::sin(t);
    // Q = R diag(l1^2, l2^2) R^T
    double a = c * c * l1 * l1 + s * s * l2 * l2;
    double b = c * s * (l1 * l1 - l2 * l2);
    double d = s * s * l1 * l1 + c * c * l2 * l2;
    return make_ellipsoid(2, {a, b, b, d});
}

} // namespace

TEST_CASE("newton ellipsoid forms") {
    // interval spectrum: Q = m(m+1)/3
    for (int m : {1, 3, 10}) {
        Ellipsoid e = newton_ellipsoid(interval_spectrum(m));
        CHECK(e.form[0] == doctest::Approx(m * (m + 1) / 3.0).epsilon(1e-14));
    }
    Ellipsoid zero = newton_ellipsoid(make_spectrum({{0}}));
    CHECK(zero.form[0] == 0.0);
    CHECK(ellipsoid_volume(zero) == 0.0);

    std::vector<spectra::LatticePoint> grid;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y) grid.push_back({x, y});
    Ellipsoid g = newton_ellipsoid(make_spectrum(grid));
    CHECK(g.q(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(g.q(1, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(g.q(0, 1) == 0.0);
}

TEST_CASE("newton ellipsoid scaling and containment") {
    std::vector<spectra::LatticePoint> pts{{1, 2}, {-1, -2}, {3, 0}, {-3, 0}, {0, 0}};
    auto s = make_spectrum(pts);
    Ellipsoid e = newton_ellipsoid(s);
    std::vector<spectra::LatticePoint> scaled;
    for (auto p : pts) {
        for (auto& c : p) c *= 4;
        scaled.push_back(p);
    }
    Ellipsoid e4 = newton_ellipsoid(make_spectrum(scaled));
    for (size_t i = 0; i < e.form.size(); ++i)
        CHECK(e4.form[i] == doctest::Approx(16.0 * e.form[i]).epsilon(1e-14));

    // support of the ellipsoid is dominated by the support of the hull
    convex::Polytope hull = spectra::newton_polytope(s);
    for (const auto& u : convex::unit_directions(2, 64))
        CHECK(e.support(u) <= convex::support_function(hull, u) + 1e-12);
}

TEST_CASE("ellipsoid volume closed forms") {
    CHECK(ellipsoid_volume(make_ellipsoid(2, {1, 0, 0, 1})) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(ellipsoid_volume(make_ellipsoid(2, {4, 0, 0, 1})) ==
          doctest::Approx(2 * std::numbers::pi).epsilon(1e-14));
    CHECK(ellipsoid_volume(make_ellipsoid(2, {2.0 / 3, 0, 0, 2.0 / 3})) ==
          doctest::Approx(2.0 / 3 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("ellipsoid validation") {
    CHECK_THROWS_AS(make_ellipsoid(2, {1, 0.5, 0.2, 1}), input_error);   // not symmetric
    CHECK_THROWS_AS(make_ellipsoid(2, {1, 2, 2, 1}), input_error);       // indefinite
    CHECK_NOTHROW(make_ellipsoid(2, {1, 1, 1, 1}));                      // PSD rank 1
}

TEST_CASE("body ellipsoids: closed forms") {
    BodyEllipsoid seg = body_ellipsoid(convex::Polytope::from_points({{-1.0}, {1.0}}), {});
    CHECK(seg.exact);
    CHECK(seg.ellipsoid.form[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));

    BodyEllipsoid box =
        body_ellipsoid(convex::Polytope::from_points({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}), {});
    CHECK(box.exact);
    CHECK(box.ellipsoid.q(0, 0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(box.ellipsoid.q(1, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(box.ellipsoid.q(0, 1) == 0.0);

    for (int n : {1, 2, 3}) {
        BodyEllipsoid ball = body_ellipsoid(Ball{n, 1.0}, {});
        double expect = unit_ball_volume(n - 1) / unit_ball_volume(n) * beta_moment(n);
        CHECK(ball.ellipsoid.q(0, 0) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("body ellipsoid Monte Carlo matches the exact simplex moments") {
    // oracle: for a simplex with vertices v_i (k-dim), the second moment about
    // the origin is vol/((k+1)(k+2)) * (sum v_i v_i^T + (sum v_i)(sum v_i)^T),
    // normalized by the volume.
    std::vector<std::vector<double>> verts{{0, 0}, {2, 0}, {0, 1}};
    auto tri = convex::Polytope::from_points(verts);
    std::vector<double> expect(4, 0.0), vsum(2, 0.0);
    for (const auto& v : verts)
        for (int i = 0; i < 2; ++i) {
            vsum[i] += v[i];
            for (int j = 0; j < 2; ++j) expect[i * 2 + j] += v[i] * v[j];
        }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            expect[i * 2 + j] = (expect[i * 2 + j] + vsum[i] * vsum[j]) / 12.0;

    McParams mc;
    mc.samples = 200000;
    mc.seed = 11;
    BodyEllipsoid be = body_ellipsoid(tri, mc);
    CHECK_FALSE(be.exact);
    CHECK(be.stderr_max > 0.0);
    for (int i = 0; i < 4; ++i)
        CHECK(std::fabs(be.ellipsoid.form[i] - expect[i]) <= 4 * be.stderr_max + 1e-9);
}

TEST_CASE("degenerate body ellipsoid via triangulation sampling") {
    convex::Polytope seg = convex::Polytope::from_points({{-2, -2}, {2, 2}});
    McParams mc;
    mc.samples = 100000;
    BodyEllipsoid be = body_ellipsoid(seg, mc);
    // segment of half-length a along u: Q = (a^2/3) u u^T with a^2 = 8
    CHECK(be.ellipsoid.q(0, 0) == doctest::Approx(8.0 / 3 / 2).epsilon(0.03));
    CHECK(be.ellipsoid.q(0, 1) == doctest::Approx(8.0 / 3 / 2).epsilon(0.03));
}

TEST_CASE("mixed volume of ellipsoids: exact anchors") {
    McParams mc;
    mc.samples = 100000;

    // balls of radii r1, r2 -> sigma_2 r1 r2, exactly for every sample
    Ellipsoid b1 = make_ellipsoid(2, {1, 0, 0, 1});
    Ellipsoid b2 = make_ellipsoid(2, {4, 0, 0, 4});
    Estimate est = mixed_volume_ellipsoids({b1, b2}, mc);
    CHECK(est.mean == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
    CHECK(est.stderr_ <= 1e-12);

    // equal arguments -> ordinary volume, exactly
    Ellipsoid e = make_ellipsoid(2, {2, 0.5, 0.5, 1});
    Estimate same = mixed_volume_ellipsoids({e, e}, mc);
    CHECK(same.mean == doctest::Approx(ellipsoid_volume(e)).epsilon(1e-10));

    // all-zero forms are exact zero
    Ellipsoid z = make_ellipsoid(2, {0, 0, 0, 0});
    CHECK(mixed_volume_ellipsoids({z, z}, mc).mean == 0.0);

    CHECK_THROWS_AS(mixed_volume_ellipsoids({b1, b2}, McParams{100, 0, 1}), input_error);
}

TEST_CASE("mixed volume of ellipsoids vs polygon oracle") {
    std::mt19937_64 eng(2024);
    McParams mc;
    mc.samples = 100000;
    for (int rep = 0; rep < 5; ++rep) {
        Ellipsoid e1 = random_ellipsoid2(eng), e2 = random_ellipsoid2(eng);
        Estimate est = mixed_volume_ellipsoids({e1, e2}, mc);
        double oracle = convex::mixed_volume(
            {polygon_approximation(e1, 256), polygon_approximation(e2, 256)});
        CHECK(std::fabs(est.mean - oracle) <= 3.0 * est.stderr_ + 1e-3 * oracle);
    }
}

TEST_CASE("dimension 3 and 4 determinant paths") {
    auto diag = [](std::vector<double> d) {
        int n = static_cast<int>(d.size());
        std::vector<double> form(static_cast<size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) form[static_cast<size_t>(i) * n + i] = d[i];
        return make_ellipsoid(n, form);
    };
    McParams mc{20000, 1, 1};

    // equal arguments: the ratio collapses and the volume comes out exactly
    Ellipsoid e4 = diag({0.5, 1.0, 1.5, 2.0});
    Estimate same = mixed_volume_ellipsoids({e4, e4, e4, e4}, mc);
    CHECK(same.mean == doctest::Approx(ellipsoid_volume(e4)).epsilon(1e-10));

    // balls of mixed radii: sigma_n times the product of radii
    auto ball = [&](int n, double r) {
        return diag(std::vector<double>(static_cast<size_t>(n), r * r));
    };
    Estimate b3 = mixed_volume_ellipsoids({ball(3, 1), ball(3, 2), ball(3, 0.5)}, mc);
    CHECK(b3.mean == doctest::Approx(unit_ball_volume(3) * 1.0 * 2.0 * 0.5).epsilon(1e-10));
    Estimate b4 =
        mixed_volume_ellipsoids({ball(4, 1), ball(4, 2), ball(4, 0.5), ball(4, 1.5)}, mc);
    CHECK(b4.mean == doctest::Approx(unit_ball_volume(4) * 1.5).epsilon(1e-10));
}

TEST_CASE("four-dimensional system expectation, exact path") {
    auto s = spectra::ball_spectrum(4, 1); // {0, +-e_i}: Q = (2/9) I
    auto est = kac::expected_real_roots({s, s, s, s}, {10000, 0, 1});
    double expect = 24.0 * unit_ball_volume(4) * std::pow(2.0 / 9.0, 2.0);
    CHECK(est.mean == doctest::Approx(expect).epsilon(1e-12));
    CHECK(est.stderr_ == 0.0);
}

TEST_CASE("estimator determinism and thread invariance") {
    Ellipsoid e1 = make_ellipsoid(2, {2, 0.3, 0.3, 1});
    Ellipsoid e2 = make_ellipsoid(2, {1, -0.2, -0.2, 3});
    McParams a{50000, 77, 1}, b{50000, 77, 4};
    Estimate ra = mixed_volume_ellipsoids({e1, e2}, a);
    Estimate rb = mixed_volume_ellipsoids({e1, e2}, b);
    CHECK(ra.mean == rb.mean);
    CHECK(ra.stderr_ == rb.stderr_);
}

TEST_CASE("estimator stderr shrinks like samples^-1/2") {
    Ellipsoid e1 = make_ellipsoid(2, {2, 0.3, 0.3, 1});
    Ellipsoid e2 = make_ellipsoid(2, {1, -0.2, -0.2, 3});
    Estimate small = mixed_volume_ellipsoids({e1, e2}, {10000, 5, 1});
    Estimate large = mixed_volume_ellipsoids({e1, e2}, {160000, 5, 1});
    CHECK(large.stderr_ < small.stderr_);
    CHECK(small.stderr_ / large.stderr_ == doctest::Approx(4.0).epsilon(0.35));
}

TEST_CASE("scaled lattice ellipsoids converge to the body ellipsoid") {
    // box [-1,1]^2: lattice dilates are the integer grids {-m..m}^2
    auto box = convex::Polytope::from_points({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    Ellipsoid limit = body_ellipsoid(box, {}).ellipsoid;
    double prev = 1e300;
    for (double m : {4.0, 8.0, 16.0, 32.0}) {
        auto s = spectra::dilate_spectrum(box, m);
        Ellipsoid em = newton_ellipsoid(s);
        for (double& q : em.form) q /= m * m;
        double d = hausdorff_distance(em, limit);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("ellipsoid hausdorff distance") {
    Ellipsoid a = make_ellipsoid(2, {1, 0, 0, 1});
    Ellipsoid b = make_ellipsoid(2, {4, 0, 0, 4});
    CHECK(hausdorff_distance(a, b) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hausdorff_distance(a, a) == 0.0);
}

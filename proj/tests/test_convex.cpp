#include "doctest.h"

#include "kacfta/convex.hpp"
#include "kacfta/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace kacfta;
using convex::Polytope;

namespace {

Polytope box2(double a) { return Polytope::from_points({{-a, -a}, {a, -a}, {a, a}, {-a, a}}); }

Polytope random_polytope(int dim, int n_pts, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n_pts; ++i) {
        std::vector<double> p(dim);
        for (double& c : p) c = uni(eng);
        pts.push_back(std::move(p));
    }
    return Polytope::from_points(pts);
}

Polytope disk_polygon(double r, int sides) {
    std::vector<std::vector<double>> pts;
    for (int k = 0; k < sides; ++k) {
        double t = 2.0 * std::numbers::pi * k / sides;
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return Polytope::from_points(pts);
}

} // namespace

TEST_CASE("hull canonicalization") {
    Polytope tri = Polytope::from_points({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    CHECK(tri.vertices().size() == 3);

    Polytope seg = Polytope::from_points({{0.0}, {1.0}, {2.0}});
    CHECK(seg.vertices().size() == 2);
    CHECK(convex::volume(seg) == 2.0);

    std::vector<std::vector<double>> grid;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y) grid.push_back({double(x), double(y)});
    CHECK(Polytope::from_points(grid).vertices().size() == 4);
}

TEST_CASE("volumes") {
    CHECK(convex::volume(box2(0.5)) == 1.0);
    CHECK(convex::volume(Polytope::from_points({{0, 0}, {1, 0}, {0, 1}})) == 0.5);
    Polytope seg = Polytope::from_points({{-1, 0}, {1, 0}});
    CHECK(convex::volume(seg) == 0.0);
    CHECK(convex::affine_volume(seg) == 2.0);
}

TEST_CASE("minkowski sums") {
    Polytope a = Polytope::from_points({{0.0}, {1.0}});
    Polytope s = minkowski_sum(a, a);
    CHECK(convex::volume(s) == 2.0);

    Polytope e1 = Polytope::from_points({{0, 0}, {1, 0}});
    Polytope e2 = Polytope::from_points({{0, 0}, {0, 1}});
    Polytope sq = minkowski_sum(e1, e2);
    CHECK(sq.vertices().size() == 4);
    CHECK(convex::volume(sq) == 1.0);

    CHECK(convex::volume(minkowski_sum(box2(1), box2(1))) == 16.0);
}

TEST_CASE("mixed volume basics") {
    Polytope e1 = Polytope::from_points({{0, 0}, {1, 0}});
    Polytope e2 = Polytope::from_points({{0, 0}, {0, 1}});
    CHECK(convex::mixed_volume({e1, e2}) == doctest::Approx(0.5).epsilon(1e-14));

    Polytope disk = disk_polygon(1.0, 256);
    CHECK(convex::mixed_volume({disk, disk}) == doctest::Approx(convex::volume(disk)).epsilon(1e-14));

    Polytope tri = Polytope::from_points({{0, 0}, {1, 0}, {0, 1}});
    CHECK(convex::mixed_volume({tri, tri}) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mixed volume is symmetric, multilinear, translation invariant") {
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 12; ++rep) {
        int n = rep % 2 == 0 ? 2 : 3;
        std::vector<Polytope> bodies;
        for (int i = 0; i < n; ++i) bodies.push_back(random_polytope(n, 6, eng));

        double base = convex::mixed_volume(bodies);
        CHECK(base >= 0.0);

        // V(A,...,A) = vol(A)
        std::vector<Polytope> rep_body(static_cast<size_t>(n), bodies[0]);
        CHECK(convex::mixed_volume(rep_body) ==
              doctest::Approx(convex::volume(bodies[0])).epsilon(1e-12));

        // symmetry
        std::vector<Polytope> perm = bodies;
        std::swap(perm[0], perm[n - 1]);
        CHECK(convex::mixed_volume(perm) == doctest::Approx(base).epsilon(1e-9));

        // multilinearity in the first slot
        Polytope extra = random_polytope(n, 5, eng);
        std::vector<Polytope> lhs = bodies;
        lhs[0] = minkowski_sum(bodies[0], extra);
        std::vector<Polytope> rhs = bodies;
        rhs[0] = extra;
        CHECK(convex::mixed_volume(lhs) ==
              doctest::Approx(base + convex::mixed_volume(rhs)).epsilon(1e-9));

        // translation invariance
        std::vector<double> shift(n, 0.0);
        std::uniform_real_distribution<double> uni(-2.0, 2.0);
        for (double& c : shift) c = uni(eng);
        std::vector<Polytope> moved = bodies;
        moved[0] = translated(bodies[0], shift);
        CHECK(convex::mixed_volume(moved) == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("mixed volume handles degenerate summands") {
    Polytope seg = Polytope::from_points({{-1, 0}, {1, 0}});
    Polytope segy = Polytope::from_points({{0, -1}, {0, 1}});
    // V = area(seg + segy)/2 = 4/2
    CHECK(convex::mixed_volume({seg, segy}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(convex::mixed_volume({seg, seg}) == doctest::Approx(0.0));
}

TEST_CASE("support function") {
    Polytope sq = box2(1.0);
    CHECK(convex::support_function(sq, {1, 0}) == 1.0);
    CHECK(convex::support_function(sq, {1, 1}) == 2.0);
    Polytope e = Polytope::from_points({{0, 0}, {1, 0}});
    CHECK(convex::support_function(e, {-1, 0}) == 0.0);
    // positive homogeneity
    CHECK(convex::support_function(sq, {2.5, -1.5}) ==
          doctest::Approx(2.5 * convex::support_function(sq, {1, -0.6})).epsilon(1e-12));
}

TEST_CASE("hausdorff distance") {
    Polytope sq = box2(1.0);
    CHECK(convex::hausdorff_distance(sq, sq) == 0.0);
    Polytope a = Polytope::from_points({{0.0}, {1.0}});
    Polytope b = Polytope::from_points({{0.0}, {2.0}});
    CHECK(convex::hausdorff_distance(a, b) == 1.0);
    Polytope disk = disk_polygon(1.0, 8192);
    CHECK(convex::hausdorff_distance(sq, disk) ==
          doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-3));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(Polytope::from_points({}), input_error);
    CHECK_THROWS_AS(minkowski_sum(box2(1), Polytope::from_points({{0.0}, {1.0}})), input_error);
    CHECK_THROWS_AS(convex::mixed_volume({box2(1)}), input_error); // 1 body in R^2
}

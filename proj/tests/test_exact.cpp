#include "doctest.h"

#include "kacfta/exact.hpp"

#include <random>

using namespace kacfta::exact;

TEST_CASE("dyadic arithmetic round-trips doubles exactly") {
    std::mt19937_64 eng(42);
    std::uniform_real_distribution<double> uni(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        double a = uni(eng), b = uni(eng);
        Dyadic da = Dyadic::from_double(a), db = Dyadic::from_double(b);
        CHECK(da.to_double() == a);
        CHECK((da * db).sign() == (a * b > 0 ? 1 : (a * b < 0 ? -1 : 0)));
        CHECK((da + db).to_double() == doctest::Approx(a + b).epsilon(1e-15));
        CHECK((da - db).compare(db - da) == (a == b ? 0 : (a > b ? 1 : -1)));
    }
}

TEST_CASE("dyadic sums of many terms are exact") {
    // 0.1 is not dyadic-exact as a real but is exact as a double; summing the
    // double value 300 times must match the exact scaled value.
    Dyadic p1 = Dyadic::from_double(0.1);
    Dyadic acc;
    for (int i = 0; i < 300; ++i) acc = acc + p1;
    Dyadic direct = p1 * Dyadic(300);
    CHECK(acc.compare(direct) == 0);
}

TEST_CASE("determinant signs") {
    auto D = [](double x) { return Dyadic::from_double(x); };
    std::vector<DPoint> m{{D(1), D(2)}, {D(3), D(4)}};
    CHECK(det(m).to_double() == -2.0);
    std::vector<DPoint> singular{{D(1), D(2)}, {D(2), D(4)}};
    CHECK(det_sign(singular) == 0);
    std::vector<DPoint> m3{{D(2), D(0), D(0)}, {D(0), D(3), D(0)}, {D(0), D(0), D(4)}};
    CHECK(det(m3).to_double() == 24.0);
}

TEST_CASE("affine basis detects rank and pivots") {
    auto D = [](double x) { return Dyadic::from_double(x); };
    std::vector<DPoint> pts{{D(0), D(0)}, {D(1), D(1)}, {D(2), D(2)}};
    AffineBasis ab = affine_basis(pts, 2);
    CHECK(ab.rank == 1);
    std::vector<DPoint> pts2{{D(0), D(0)}, {D(1), D(1)}, {D(1), D(0)}};
    CHECK(affine_basis(pts2, 2).rank == 2);
}

TEST_CASE("2-d hull drops interior and collinear points") {
    HullInput in = dedup_points({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}, {0.5, 0}, {0.5, 0.5}}, 2);
    HullData h = convex_hull(in, 2);
    CHECK(h.affine_dim == 2);
    CHECK(h.vertices.size() == 3);
    CHECK(volume_scaled(h, in).to_double() == 1.0); // 2! * area(triangle) = 1
}

TEST_CASE("3-d hull of lattice cube") {
    std::vector<std::vector<double>> pts;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) pts.push_back({double(x), double(y), double(z)});
    HullInput in = dedup_points(pts, 3);
    HullData h = convex_hull(in, 3);
    CHECK(h.affine_dim == 3);
    CHECK(h.vertices.size() == 8);
    CHECK(h.facets.size() == 6);
    for (const auto& f : h.facets) CHECK(f.size() == 4);
    CHECK(volume_scaled(h, in).to_double() == doctest::Approx(48.0)); // 3! * 8
}

TEST_CASE("3-d hull of octahedron plus interior points") {
    std::vector<std::vector<double>> pts{{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},        {0, -1, 0},
                                         {0, 0, 1},  {0, 0, -1}, {0.1, 0.1, 0.1},  {0, 0, 0}};
    HullInput in = dedup_points(pts, 3);
    HullData h = convex_hull(in, 3);
    CHECK(h.vertices.size() == 6);
    CHECK(h.facets.size() == 8);
    CHECK(volume_scaled(h, in).to_double() == doctest::Approx(8.0)); // 3! * 4/3
}

TEST_CASE("degenerate hulls reduce to their affine hull") {
    HullInput seg = dedup_points({{0, 0}, {1, 2}, {2, 4}, {0.5, 1}}, 2);
    HullData h = convex_hull(seg, 2);
    CHECK(h.affine_dim == 1);
    CHECK(h.vertices.size() == 2);
    CHECK(volume_scaled(h, seg).sign() == 0);
    CHECK(affine_volume(h, seg) == doctest::Approx(std::sqrt(20.0)));
}

TEST_CASE("4-d hull of the cross polytope") {
    std::vector<std::vector<double>> pts;
    for (int j = 0; j < 4; ++j)
        for (int s : {-1, 1}) {
            std::vector<double> p(4, 0.0);
            p[j] = s;
            pts.push_back(p);
        }
    pts.push_back({0.1, 0.1, 0.1, 0.1});
    HullInput in = dedup_points(pts, 4);
    HullData h = convex_hull(in, 4);
    CHECK(h.affine_dim == 4);
    CHECK(h.vertices.size() == 8);
    CHECK(h.facets.size() == 16);
    // vol of unit cross polytope is 2^4 / 4! ; volume_scaled returns 4! * vol
    CHECK(volume_scaled(h, in).to_double() == doctest::Approx(16.0));
}

TEST_CASE("exact membership includes boundary lattice points") {
    HullInput in = dedup_points({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, 2);
    HullData h = convex_hull(in, 2);
    auto pt = [](double x, double y) {
        return DPoint{Dyadic::from_double(x), Dyadic::from_double(y)};
    };
    Dyadic three(3);
    CHECK(contains_scaled(h, in, three, pt(3, 3)));
    CHECK(contains_scaled(h, in, three, pt(-3, 0)));
    CHECK(contains_scaled(h, in, three, pt(0, 0)));
    CHECK_FALSE(contains_scaled(h, in, three, pt(3.0000001, 0)));
    CHECK_FALSE(contains_scaled(h, in, three, pt(4, 0)));
}

TEST_CASE("membership in a degenerate segment") {
    HullInput in = dedup_points({{-1, -2}, {1, 2}}, 2);
    HullData h = convex_hull(in, 2);
    CHECK(affine_hull_contains_origin(h, in));
    auto pt = [](double x, double y) {
        return DPoint{Dyadic::from_double(x), Dyadic::from_double(y)};
    };
    Dyadic two(2);
    CHECK(contains_scaled(h, in, two, pt(2, 4)));
    CHECK(contains_scaled(h, in, two, pt(0, 0)));
    CHECK_FALSE(contains_scaled(h, in, two, pt(1, 1)));
    CHECK_FALSE(contains_scaled(h, in, two, pt(3, 6)));

    HullInput off = dedup_points({{0, 1}, {1, 1}}, 2);
    HullData hoff = convex_hull(off, 2);
    CHECK_FALSE(affine_hull_contains_origin(hoff, off));
}

TEST_CASE("random lattice polygon areas satisfy the interior/boundary count identity") {
    // area = interior + boundary/2 - 1 for lattice polygons: an oracle that
    // exercises the hull, the exact area, and exact membership together
    std::mt19937_64 eng(314);
    std::uniform_int_distribution<int> coord(-6, 6);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 8; ++i)
            pts.push_back({double(coord(eng)), double(coord(eng))});
        HullInput in = dedup_points(pts, 2);
        HullData h = convex_hull(in, 2);
        if (h.affine_dim < 2) continue;
        double area = volume_scaled(h, in).to_double() / 2.0;

        // count lattice points inside and on the hull
        int interior = 0, boundary = 0;
        Dyadic one(1);
        for (int x = -6; x <= 6; ++x)
            for (int y = -6; y <= 6; ++y) {
                DPoint q{Dyadic(x), Dyadic(y)};
                if (!contains_scaled(h, in, one, q)) continue;
                // boundary test: on some edge line between consecutive cycle points
                bool on_edge = false;
                for (size_t i = 0; i < h.cycle.size() && !on_edge; ++i) {
                    const DPoint& a = in.dpts[h.cycle[i]];
                    const DPoint& b = in.dpts[h.cycle[(i + 1) % h.cycle.size()]];
                    Dyadic cross = (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]);
                    on_edge = cross.sign() == 0;
                }
                (on_edge ? boundary : interior) += 1;
            }
        CHECK(area == doctest::Approx(interior + 0.5 * boundary - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("3-d membership") {
    std::vector<std::vector<double>> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    HullInput in = dedup_points(pts, 3);
    HullData h = convex_hull(in, 3);
    auto pt = [](double x, double y, double z) {
        return DPoint{Dyadic::from_double(x), Dyadic::from_double(y), Dyadic::from_double(z)};
    };
    Dyadic one(1);
    CHECK(contains_scaled(h, in, one, pt(0.25, 0.25, 0.25)));
    CHECK(contains_scaled(h, in, one, pt(0, 0, 1)));
    CHECK(contains_scaled(h, in, one, pt(0.5, 0.5, 0))); // mid-edge
    CHECK_FALSE(contains_scaled(h, in, one, pt(0.5, 0.5, 0.5)));
}

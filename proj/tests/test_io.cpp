#include "doctest.h"

#include "kacfta/errors.hpp"
#include "kacfta/io.hpp"

#include <sstream>

using namespace kacfta;

TEST_CASE("spectrum text round trip") {
    auto s = spectra::ball_spectrum(2, 2);
    std::string text = io::write_spectrum(s);
    std::istringstream in(text);
    auto back = io::read_spectrum(in);
    CHECK(back.points == s.points);
    CHECK(back.dim == s.dim);

    std::istringstream commented("# frequencies\nn 1\n-1\n0 # origin\n1\n");
    auto c = io::read_spectrum(commented);
    CHECK(c.size() == 3);
    CHECK(c.symmetric);
}

TEST_CASE("spectrum parse errors carry line numbers") {
    std::istringstream bad_header("m 2\n");
    CHECK_THROWS_WITH_AS(io::read_spectrum(bad_header), doctest::Contains("line 1"), input_error);

    std::istringstream bad_point("n 2\n1 2\n3\n");
    CHECK_THROWS_WITH_AS(io::read_spectrum(bad_point), doctest::Contains("line 3"), input_error);

    std::istringstream not_int("n 1\nx\n");
    CHECK_THROWS_AS(io::read_spectrum(not_int), input_error);
}

TEST_CASE("expsum text round trip") {
    std::istringstream in("# integers lattice\n0 -6.283185307179586 1 0\n0 0 -1 0\n");
    auto f = io::read_expsum(in);
    CHECK(f.terms.size() == 2);
    std::string text = io::write_expsum(f);
    std::istringstream in2(text);
    auto g = io::read_expsum(in2);
    CHECK(g.terms.size() == 2);
    CHECK(g.terms[0].lambda == f.terms[0].lambda);
    CHECK(g.terms[0].coef == f.terms[0].coef);

    std::istringstream bad("1 2 3\n");
    CHECK_THROWS_WITH_AS(io::read_expsum(bad), doctest::Contains("line 1"), input_error);
}

TEST_CASE("polytope JSON round trip") {
    auto p = convex::Polytope::from_points({{0, 0}, {1, 0}, {0, 1}, {0.25, 0.25}});
    std::string j = io::polytope_json(p);
    auto q = io::parse_polytope_json(j);
    CHECK(q.vertices() == p.vertices());
    CHECK(io::polytope_json(q) == j); // canonical form is a fixed point

    CHECK_THROWS_AS(io::parse_polytope_json("{\"dim\": 2}"), input_error);
    CHECK_THROWS_AS(io::parse_polytope_json("{\"dim\": 2, \"vertices\": [[1,2,3]]}"), input_error);
}

TEST_CASE("ellipsoid JSON round trip") {
    auto e = ellipsoids::make_ellipsoid(2, {2.0, 0.5, 0.5, 1.0});
    auto f = io::parse_ellipsoid_json(io::ellipsoid_json(e));
    CHECK(f.form == e.form);
    CHECK_THROWS_AS(io::parse_ellipsoid_json("{\"dim\": 2, \"form\": [[1, 2], [3, 1]]}"),
                    input_error);
}

TEST_CASE("complex polytope JSON round trip") {
    auto p = zerofan::make_complex_polytope(1, {{0, 0}, {1, 0}, {0, 1}});
    auto q = io::parse_complex_polytope_json(io::complex_polytope_json(p));
    CHECK(q.n == 1);
    CHECK(q.body.vertices() == p.body.vertices());
}

TEST_CASE("report JSON schemas are frozen") {
    ellipsoids::Estimate e{1.5, 0.25, 100, 7};
    CHECK(io::estimate_json(e) == "{\"mean\":1.5,\"stderr\":0.25,\"n_samples\":100,\"seed\":7}");

    kac::KacReport r;
    r.expected_real_roots = 4.0;
    r.total_roots = 6.0;
    r.prob_real = 4.0 / 6.0;
    r.stderr_ = 0.0;
    r.seed = 0;
    r.spectra_hashes = {42};
    std::string rj = io::kac_report_json(r);
    CHECK(rj.find("\"expected_real_roots\":4.0") != std::string::npos);
    CHECK(rj.find("\"total_roots\":6.0") != std::string::npos);
    CHECK(rj.find("\"prob_real\":0.66666") != std::string::npos);
    CHECK(rj.find("\"stderr\":") != std::string::npos);
    CHECK(rj.find("\"seed\":0") != std::string::npos);

    expsum::DiskCountReport d;
    d.r = 5.5;
    d.r_used = 5.5;
    d.count = 11;
    d.predicted = 11.0;
    d.contour_points = 2048;
    std::string dj = io::disk_report_json(d);
    CHECK(dj.find("\"r\":5.5") != std::string::npos);
    CHECK(dj.find("\"count\":11") != std::string::npos);
    CHECK(dj.find("\"contour_points\":2048") != std::string::npos);
}

TEST_CASE("csv emitter") {
    CHECK(io::counts_csv({2, 4, 2}) == "sample_index,root_count\n0,2\n1,4\n2,2\n");
}

TEST_CASE("number formatting is lossless") {
    for (double x : {1.0 / 3.0, 4.0 * std::atan(1.0), 1e-17, 123456.789}) {
        CHECK(std::stod(io::format_number(x)) == x);
    }
}

// Acceptance suite: one pass/fail line per criterion, all tolerances pinned.

#include "kacfta/convex.hpp"
#include "kacfta/ellipsoid.hpp"
#include "kacfta/errors.hpp"
#include "kacfta/expsum.hpp"
#include "kacfta/kac.hpp"
#include "kacfta/mc_lab.hpp"
#include "kacfta/rng.hpp"
#include "kacfta/spectrum.hpp"
#include "kacfta/zerofan.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace kacfta;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

int g_failures = 0;

template <class F>
void criterion(int num, const std::string& name, double budget_seconds, F body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0 && secs > budget_seconds) {
        out.pass = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += "runtime " + std::to_string(secs) + "s exceeds budget " +
                      std::to_string(budget_seconds) + "s";
    }
    if (!out.pass) ++g_failures;
    std::printf("%s criterion %2d: %s (%.2fs)%s%s\n", out.pass ? "PASS" : "FAIL", num,
                name.c_str(), secs, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

convex::Polytope random_polytope(int dim, int n_pts, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n_pts; ++i) {
        std::vector<double> p(dim);
        for (double& c : p) c = uni(eng);
        pts.push_back(std::move(p));
    }
    return convex::Polytope::from_points(pts);
}

ellipsoids::Ellipsoid random_ellipsoid2(std::mt19937_64& eng) {
    std::uniform_real_distribution<double> uni(0.3, 2.0);
    std::uniform_real_distribution<double> ang(0.0, kPi);
    double l1 = uni(eng), l2 = uni(eng), t = ang(eng);
    double c = std::cos(t), s = std::sin(t);
    double a = c * c * l1 * l1 + s * s * l2 * l2;
    double b = c * s * (l1 * l1 - l2 * l2);
    double d = s * s * l1 * l1 + c * c * l2 * l2;
    return ellipsoids::make_ellipsoid(2, {a, b, b, d});
}

expsum::ExpSum1D integers_lattice() {
    return expsum::make_expsum(
        {{cplx(0.0, -2.0 * kPi), cplx(1.0, 0.0)}, {cplx(0.0, 0.0), cplx(-1.0, 0.0)}});
}

expsum::ExpSum1D sinh3() {
    return expsum::make_expsum({{cplx(3, 0), cplx(1, 0)}, {cplx(-3, 0), cplx(-1, 0)}});
}

double simpson_piece(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive(F f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    double left = simpson_piece(a, m, fa, flm, fm), right = simpson_piece(m, b, fm, frm, fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(F f, double a, double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive(f, a, b, fa, fm, fb, simpson_piece(a, b, fa, fm, fb), tol, 40);
}

spectra::Spectrum grid_spectrum2() {
    std::vector<spectra::LatticePoint> pts;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y) pts.push_back({x, y});
    return spectra::make_spectrum(pts);
}

} // namespace

int main() {
    criterion(1, "moment constants beta_1..beta_20, exact and floating", 1.0, [](Outcome& out) {
        struct Row {
            int n;
            std::int64_t num, den;
            int pi;
        };
        const Row rows[] = {
            {1, 2, 3, 0},             {2, 1, 8, 1},            {3, 4, 15, 0},
            {4, 1, 16, 1},            {5, 16, 105, 0},         {6, 5, 128, 1},
            {7, 32, 315, 0},          {8, 7, 256, 1},          {9, 256, 3465, 0},
            {10, 21, 1024, 1},        {11, 512, 9009, 0},      {12, 33, 2048, 1},
            {13, 2048, 45045, 0},     {14, 429, 32768, 1},     {15, 4096, 109395, 0},
            {16, 715, 65536, 1},      {17, 65536, 2078505, 0}, {18, 2431, 262144, 1},
            {19, 131072, 4849845, 0}, {20, 4199, 524288, 1},
        };
        for (const auto& r : rows) {
            kac::ExactConstant c = kac::beta_exact(r.n);
            out.require(c.num == r.num && c.den == r.den && c.pi_power == r.pi,
                        "exact form mismatch at n=" + std::to_string(r.n));
            double p = 0.5 * (r.n - 1);
            auto f = [p](double x) { return x * x * std::pow(std::max(0.0, 1.0 - x * x), p); };
            double quad = integrate(f, -1.0, 1.0, 1e-14);
            out.require(std::fabs(kac::beta_n(r.n) - quad) <= 1e-12,
                        "floating value off at n=" + std::to_string(r.n));
        }
    });

    criterion(2, "1-d Kac-type count: {-3..3} via 2e4 samples, {-1,1} exact", 60.0,
              [](Outcome& out) {
                  auto est =
                      mc::estimate_expected_roots_1d(spectra::interval_spectrum(3), 20000, 0);
                  out.require(std::fabs(est.mean - 4.0) <= 3.0 * est.stderr_,
                              "mean " + fmt(est.mean) + " not within 3*" + fmt(est.stderr_) +
                                  " of 4");
                  auto pair =
                      mc::estimate_expected_roots_1d(spectra::make_spectrum({{-1}, {1}}), 500, 0);
                  out.require(pair.mean == 2.0 && pair.stderr_ == 0.0,
                              "degree-1 pair not exactly 2 with zero variance");
              });

    criterion(3, "probability limit 1/sqrt(3)", 0.0, [](Outcome& out) {
        double p = kac::prob_real_1d(spectra::interval_spectrum(10000));
        out.require(std::fabs(p - 1.0 / std::sqrt(3.0)) <= 1e-3,
                    "prob at m=10^4 is " + fmt(p));
        double a = kac::asymptotic_prob_ball(1);
        out.require(std::fabs(a - 1.0 / std::sqrt(3.0)) <= 1e-12, "ball limit at n=1 is " + fmt(a));
    });

    criterion(4, "evaluation-curve length identity", 0.0, [](Outcome& out) {
        std::vector<spectra::Spectrum> cases{spectra::make_spectrum({{-1}, {1}}),
                                             spectra::interval_spectrum(3),
                                             spectra::make_spectrum({{-5}, {-2}, {0}, {2}, {5}})};
        for (const auto& s : cases) {
            auto r = mc::curve_length_check(s);
            out.require(std::fabs(r.numeric - r.closed_form) <= 1e-6 * r.closed_form,
                        "relative error " + fmt((r.numeric - r.closed_form) / r.closed_form));
        }
    });

    criterion(5, "crossing counts match curve length over pi", 0.0, [](Outcome& out) {
        std::vector<spectra::Spectrum> cases{spectra::make_spectrum({{-1}, {1}}),
                                             spectra::interval_spectrum(3),
                                             spectra::make_spectrum({{-5}, {-2}, {0}, {2}, {5}})};
        for (const auto& s : cases) {
            auto est = mc::crofton_check(s, 10000, 0);
            double target = mc::curve_length_check(s).closed_form / kPi;
            out.require(std::fabs(est.mean - target) <= 3.0 * est.stderr_ + 1e-12,
                        "mean " + fmt(est.mean) + " vs " + fmt(target) + " (3 stderr " +
                            fmt(3 * est.stderr_) + ")");
        }
    });

    criterion(6, "mixed-volume suite on random polytopes", 0.0, [](Outcome& out) {
        std::mt19937_64 eng(101);
        for (int rep = 0; rep < 100; ++rep) {
            int n = rep % 2 == 0 ? 2 : 3;
            auto body = random_polytope(n, 6, eng);
            std::vector<convex::Polytope> same(static_cast<size_t>(n), body);
            double mv = convex::mixed_volume(same);
            double vol = convex::volume(body);
            out.require(std::fabs(mv - vol) <= 1e-12 * std::max(1.0, vol),
                        "diagonal normalization off by " + fmt(mv - vol));
        }
        for (int rep = 0; rep < 10; ++rep) {
            int n = rep % 2 == 0 ? 2 : 3;
            std::vector<convex::Polytope> bodies;
            for (int i = 0; i < n; ++i) bodies.push_back(random_polytope(n, 6, eng));
            double base = convex::mixed_volume(bodies);
            auto perm = bodies;
            std::swap(perm[0], perm[n - 1]);
            out.require(std::fabs(convex::mixed_volume(perm) - base) <= 1e-9, "symmetry");
            auto extra = random_polytope(n, 5, eng);
            auto lhs = bodies;
            lhs[0] = convex::minkowski_sum(bodies[0], extra);
            auto rhs = bodies;
            rhs[0] = extra;
            out.require(std::fabs(convex::mixed_volume(lhs) -
                                  (base + convex::mixed_volume(rhs))) <= 1e-9,
                        "multilinearity");
        }
        double bkk = kac::bkk_count({spectra::make_spectrum({{0, 0}, {1, 0}}),
                                     spectra::make_spectrum({{0, 0}, {0, 1}})});
        out.require(bkk == 1.0, "bkk of the two axis segments is " + fmt(bkk));
    });

    criterion(7, "ellipsoid mixed volumes: ball anchors and polygon oracle", 120.0,
              [](Outcome& out) {
                  ellipsoids::McParams mc{100000, 0, 1};
                  auto b = [](int n, double r) {
                      std::vector<double> form(static_cast<size_t>(n) * n, 0.0);
                      for (int i = 0; i < n; ++i) form[static_cast<size_t>(i) * n + i] = r * r;
                      return ellipsoids::Ellipsoid{n, form};
                  };
                  auto est2 = ellipsoids::mixed_volume_ellipsoids({b(2, 1), b(2, 2)}, mc);
                  out.require(std::fabs(est2.mean - kPi * 2.0) <= 3.0 * est2.stderr_ + 1e-9,
                              "balls (1,2): " + fmt(est2.mean));
                  auto est3 = ellipsoids::mixed_volume_ellipsoids({b(3, 1), b(3, 2), b(3, 3)}, mc);
                  out.require(std::fabs(est3.mean - kac::sigma_n(3) * 6.0) <=
                                  3.0 * est3.stderr_ + 1e-9,
                              "balls (1,2,3): " + fmt(est3.mean));

                  std::mt19937_64 eng(2025);
                  for (int rep = 0; rep < 20; ++rep) {
                      auto e1 = random_ellipsoid2(eng), e2 = random_ellipsoid2(eng);
                      auto est = ellipsoids::mixed_volume_ellipsoids({e1, e2}, mc);
                      double oracle =
                          convex::mixed_volume({ellipsoids::polygon_approximation(e1, 256),
                                                ellipsoids::polygon_approximation(e2, 256)});
                      out.require(std::fabs(est.mean - oracle) <= 3.0 * est.stderr_ + 1e-3 * oracle,
                                  "pair " + std::to_string(rep) + ": " + fmt(est.mean) + " vs " +
                                      fmt(oracle));
                  }
              });

    criterion(8, "2-d system expectation 4pi/3 via 2000 samples", 600.0, [](Outcome& out) {
        auto s = grid_spectrum2();
        auto est = mc::estimate_expected_roots_2d(s, s, 2000, 0);
        double target = 4.0 * kPi / 3.0;
        out.require(std::fabs(est.estimate.mean - target) <= 3.0 * est.estimate.stderr_,
                    "mean " + fmt(est.estimate.mean) + " vs " + fmt(target) + " (3 stderr " +
                        fmt(3 * est.estimate.stderr_) + ")");
    });

    criterion(9, "Hausdorff convergence of scaled lattice-ball ellipsoids", 0.0, [](Outcome& out) {
        auto limit = ellipsoids::body_ellipsoid(ellipsoids::Ball{2, 1.0}, {}).ellipsoid;
        double prev = 1e300;
        double last = 0.0;
        for (double m : {4.0, 8.0, 16.0, 32.0}) {
            auto em = ellipsoids::newton_ellipsoid(spectra::ball_spectrum(2, m));
            for (double& q : em.form) q /= m * m;
            last = ellipsoids::hausdorff_distance(em, limit);
            out.require(last < prev, "distance at m=" + fmt(m) + " did not decrease (" +
                                         fmt(last) + " vs " + fmt(prev) + ")");
            prev = last;
        }
        out.require(last < 0.02, "final distance " + fmt(last));
    });

    criterion(10, "exponential sums: exact counts, slopes, flat residuals", 60.0, [](Outcome& out) {
        auto lat = integers_lattice();
        auto sh = sinh3();
        out.require(expsum::count_zeros_disk(lat, 5.5).count == 11, "lattice count at r=5.5");
        out.require(expsum::count_zeros_disk(sh, 10.0).count == 19, "sinh count at r=10");

        auto slope_lat = expsum::density_slope(lat, {10, 20, 30, 40, 50});
        out.require(std::fabs(slope_lat.slope - 2.0) <= 0.05,
                    "lattice slope " + fmt(slope_lat.slope));
        out.require(slope_lat.max_residual <= 2.5,
                    "lattice residual " + fmt(slope_lat.max_residual));
        out.require(std::fabs(slope_lat.residuals.back()) <= slope_lat.max_residual + 1e-12,
                    "lattice residual grows with r");

        auto slope_sh = expsum::density_slope(sh, {10, 20, 30, 40, 50});
        out.require(std::fabs(slope_sh.slope - 6.0 / kPi) <= 0.02 * (6.0 / kPi),
                    "sinh slope " + fmt(slope_sh.slope));
        out.require(slope_sh.max_residual <= 2.5, "sinh residual " + fmt(slope_sh.max_residual));
    });

    criterion(11, "pseudovolume anchors and homogeneity", 0.0, [](Outcome& out) {
        auto tri = zerofan::make_complex_polytope(1, {{0, 0}, {1, 0}, {0, 1}});
        double pv_tri = zerofan::pseudovolume(tri);
        out.require(std::fabs(pv_tri - (2.0 + std::sqrt(2.0)) / 2.0) <= 1e-9,
                    "triangle " + fmt(pv_tri));

        std::vector<std::vector<double>> sq;
        for (int a : {0, 1})
            for (int b : {0, 1}) sq.push_back({double(a), 0.0, double(b), 0.0});
        auto square = zerofan::make_complex_polytope(2, sq);
        double pv_sq = zerofan::pseudovolume(square);
        out.require(std::fabs(pv_sq - 1.0) <= 1e-9, "real square " + fmt(pv_sq));

        for (double t : {0.5, 2.0, 3.0}) {
            std::vector<std::vector<double>> tv{{0, 0}, {t, 0}, {0, t}};
            double pt = zerofan::pseudovolume(zerofan::make_complex_polytope(1, tv));
            out.require(std::fabs(pt - t * pv_tri) <= 1e-9, "triangle scaling t=" + fmt(t));
            std::vector<std::vector<double>> sv;
            for (int a : {0, 1})
                for (int b : {0, 1}) sv.push_back({t * a, 0.0, t * b, 0.0});
            double ps = zerofan::pseudovolume(zerofan::make_complex_polytope(2, sv));
            out.require(std::fabs(ps - t * t * pv_sq) <= 1e-9, "square scaling t=" + fmt(t));
        }
    });

    criterion(12, "real-case density and ray-density consistency", 0.0, [](Outcome& out) {
        for (int m : {1, 3, 7}) {
            for (double len : {1.0, 2.5}) {
                double d = zerofan::zero_density_real_case({spectra::interval_spectrum(m)}, len);
                out.require(std::fabs(d - m * len / kPi) <= 1e-12,
                            "1-d density at m=" + std::to_string(m));
            }
        }
        for (auto f : {integers_lattice(), sinh3()}) {
            double total = 0.0;
            for (const auto& ray : zerofan::ray_density_1d(f)) total += ray.density;
            auto slope = expsum::density_slope(f, {10, 20, 30, 40, 50});
            out.require(std::fabs(total - slope.slope) <= 0.05 * std::fabs(slope.slope),
                        "ray total " + fmt(total) + " vs slope " + fmt(slope.slope));
        }
    });

    if (g_failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}

#include "kacfta/kac.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kacfta::kac {

using ellipsoids::Ellipsoid;
using ellipsoids::Estimate;
using ellipsoids::McParams;
using spectra::Spectrum;

double ExactConstant::value() const {
    return static_cast<double>(num) / static_cast<double>(den) *
           std::pow(std::numbers::pi, pi_power);
}

std::string ExactConstant::to_string() const {
    std::string s;
    if (pi_power == 0) {
        s = std::to_string(num);
    } else {
        std::string pi = pi_power == 1 ? "pi" : "pi^" + std::to_string(pi_power);
        s = num == 1 ? pi : std::to_string(num) + "*" + pi;
    }
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

namespace {

using i128 = __int128;

std::int64_t to_i64(i128 v) {
    if (v > i128(9223372036854775807ll) || v < -i128(9223372036854775807ll))
        throw numeric_error("exact constant overflows 64 bits");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

ExactConstant reduced(i128 num, i128 den, int pi_power) {
    i128 g = gcd128(num, den);
    if (g != 0) {
        num /= g;
        den /= g;
    }
    return ExactConstant{to_i64(num), to_i64(den), pi_power};
}

void require_symmetric(const Spectrum& s) {
    if (!s.symmetric)
        throw input_error("spectrum must be centrally symmetric for real-root statistics");
}

bool all_equal(const std::vector<Spectrum>& spectra) {
    for (size_t i = 1; i < spectra.size(); ++i)
        if (spectra[i].points != spectra[0].points) return false;
    return true;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

double expected_real_roots_1d(const Spectrum& s) {
    if (s.dim != 1) throw input_error("expected_real_roots_1d needs a 1-d spectrum");
    require_symmetric(s);
    return 2.0 * std::sqrt(s.sum_norm_sq() / static_cast<double>(s.size()));
}

double prob_real_1d(const Spectrum& s) {
    std::int64_t deg = spectra::degree_1d(s);
    require_symmetric(s);
    if (deg == 0) throw input_error("real-root probability undefined for degree 0");
    return std::sqrt(s.sum_norm_sq() / static_cast<double>(s.size())) / static_cast<double>(deg);
}

Estimate expected_real_roots(const std::vector<Spectrum>& spectra, const McParams& mc) {
    int n = static_cast<int>(spectra.size());
    if (n < 1 || n > 4) throw input_error("expected_real_roots supports 1..4 spectra");
    for (const auto& s : spectra) {
        if (s.dim != n) throw input_error("need n spectra in Z^n");
        require_symmetric(s);
    }
    if (n == 1) return Estimate{expected_real_roots_1d(spectra[0]), 0.0, 0, mc.seed};
    double nf = factorial(n);
    if (all_equal(spectra)) {
        double vol = ellipsoids::ellipsoid_volume(ellipsoids::newton_ellipsoid(spectra[0]));
        return Estimate{nf * vol, 0.0, 0, mc.seed};
    }
    std::vector<Ellipsoid> es;
    es.reserve(spectra.size());
    for (const auto& s : spectra) es.push_back(ellipsoids::newton_ellipsoid(s));
    Estimate est = ellipsoids::mixed_volume_ellipsoids(es, mc);
    est.mean *= nf;
    est.stderr_ *= nf;
    return est;
}

double bkk_count(const std::vector<Spectrum>& spectra) {
    int n = static_cast<int>(spectra.size());
    if (n < 1 || n > 3) throw input_error("bkk_count supports 1..3 spectra");
    std::vector<convex::Polytope> bodies;
    bodies.reserve(spectra.size());
    for (const auto& s : spectra) {
        if (s.dim != n) throw input_error("need n spectra in Z^n");
        bodies.push_back(spectra::newton_polytope(s));
    }
    return factorial(n) * convex::mixed_volume(bodies);
}

KacReport prob_real(const std::vector<Spectrum>& spectra, const McParams& mc) {
    KacReport rep;
    rep.seed = mc.seed;
    for (const auto& s : spectra) rep.spectra_hashes.push_back(s.hash());
    rep.total_roots = bkk_count(spectra);
    if (rep.total_roots <= 0.0)
        throw input_error("zero generic root count: real-root probability undefined");
    Estimate est = expected_real_roots(spectra, mc);
    rep.expected_real_roots = est.mean;
    rep.stderr_ = est.stderr_;
    rep.prob_real = std::clamp(est.mean / rep.total_roots, 0.0, 1.0);
    return rep;
}

ExactConstant beta_exact(int n) {
    if (n < 1 || n > 20) throw input_error("exact beta values cover n = 1..20");
    if (n % 2 == 1) {
        // k! 2^(k+1) / (2k+3)!! with k = (n-1)/2
        int k = (n - 1) / 2;
        i128 num = 1;
        for (int i = 2; i <= k; ++i) num *= i;
        num <<= (k + 1);
        i128 den = 1;
        for (int i = 3; i <= 2 * k + 3; i += 2) den *= i;
        return reduced(num, den, 0);
    }
    // pi (2j)! / (2 * 4^j * j! * (j+1)!) with j = n/2
    int j = n / 2;
    i128 num = 1;
    for (int i = 2; i <= 2 * j; ++i) num *= i;
    i128 den = 2;
    for (int i = 0; i < j; ++i) den *= 4;
    for (int i = 2; i <= j; ++i) den *= i;
    for (int i = 2; i <= j + 1; ++i) den *= i;
    return reduced(num, den, 1);
}

double beta_n(int n) {
    if (n < 1) throw input_error("beta needs n >= 1");
    if (n <= 20) return beta_exact(n).value();
    return ellipsoids::beta_moment(n);
}

ExactConstant sigma_exact(int k) {
    if (k < 0 || k > 20) throw input_error("exact ball volumes cover k = 0..20");
    if (k % 2 == 0) {
        i128 den = 1;
        for (int i = 2; i <= k / 2; ++i) den *= i;
        return reduced(1, den, k / 2);
    }
    // 2^((k+1)/2) / k!! * pi^((k-1)/2)
    i128 num = 1;
    num <<= (k + 1) / 2;
    i128 den = 1;
    for (int i = 3; i <= k; i += 2) den *= i;
    return reduced(num, den, (k - 1) / 2);
}

double sigma_n(int k) {
    if (k < 0) throw input_error("sigma needs k >= 0");
    if (k <= 20) return sigma_exact(k).value();
    return ellipsoids::unit_ball_volume(k);
}

double asymptotic_prob_ball(int n) {
    if (n < 1) throw input_error("asymptotic_prob_ball needs n >= 1");
    double ratio = sigma_n(n - 1) / sigma_n(n) * beta_n(n);
    return std::pow(ratio, 0.5 * n);
}

double asymptotic_prob_bodies(const std::vector<ellipsoids::Body>& bodies, const McParams& mc) {
    int n = static_cast<int>(bodies.size());
    if (n < 1 || n > 3) throw input_error("asymptotic_prob_bodies supports 1..3 bodies");

    bool all_balls = true, any_ball = false;
    for (const auto& b : bodies) {
        bool is_ball = std::holds_alternative<ellipsoids::Ball>(b);
        all_balls = all_balls && is_ball;
        any_ball = any_ball || is_ball;
        int d = is_ball ? std::get<ellipsoids::Ball>(b).dim : std::get<convex::Polytope>(b).dim();
        if (d != n) throw input_error("need n bodies in R^n");
        if (!is_ball) {
            const auto& p = std::get<convex::Polytope>(b);
            if (p.degenerate() && !exact::affine_hull_contains_origin(p.hull(), p.input()))
                throw input_error("degenerate body must span a lattice subspace through the origin");
        }
    }

    // numerator: mixed volume of the second-moment ellipsoids
    std::vector<Ellipsoid> es;
    for (const auto& b : bodies) es.push_back(ellipsoids::body_ellipsoid(b, mc).ellipsoid);
    bool same_forms = true;
    for (size_t i = 1; i < es.size(); ++i) same_forms = same_forms && es[i].form == es[0].form;
    double numerator;
    if (n == 1) {
        numerator = 2.0 * std::sqrt(std::max(0.0, es[0].form[0]));
    } else if (same_forms) {
        numerator = ellipsoids::ellipsoid_volume(es[0]);
    } else {
        numerator = ellipsoids::mixed_volume_ellipsoids(es, mc).mean;
    }

    // denominator: mixed volume of the bodies themselves
    double denominator;
    if (all_balls) {
        denominator = sigma_n(n);
        for (const auto& b : bodies) denominator *= std::get<ellipsoids::Ball>(b).radius;
    } else if (!any_ball) {
        std::vector<convex::Polytope> ps;
        for (const auto& b : bodies) ps.push_back(std::get<convex::Polytope>(b));
        denominator = n == 1 ? convex::volume(ps[0]) : convex::mixed_volume(ps);
    } else {
        if (n > 2) throw input_error("mixing balls and polytopes is supported for n <= 2 only");
        std::vector<convex::Polytope> ps;
        for (const auto& b : bodies) {
            if (std::holds_alternative<ellipsoids::Ball>(b)) {
                const auto& ball = std::get<ellipsoids::Ball>(b);
                Ellipsoid e{2, {ball.radius * ball.radius, 0, 0, ball.radius * ball.radius}};
                ps.push_back(ellipsoids::polygon_approximation(e, 4096));
            } else {
                ps.push_back(std::get<convex::Polytope>(b));
            }
        }
        denominator = convex::mixed_volume(ps);
    }
    if (denominator <= 0.0) throw input_error("bodies have zero mixed volume");
    return numerator / denominator;
}

} // namespace kacfta::kac

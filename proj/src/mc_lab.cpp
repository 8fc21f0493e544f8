#include "kacfta/mc_lab.hpp"

#include "kacfta/errors.hpp"
#include "kacfta/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kacfta::mc {

using spectra::LatticePoint;
using spectra::Spectrum;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool lex_positive(const LatticePoint& p) {
    for (auto c : p) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false; // the zero point
}

double dot(const LatticePoint& l, const std::vector<double>& theta) {
    double s = 0.0;
    for (size_t i = 0; i < l.size(); ++i) s += static_cast<double>(l[i]) * theta[i];
    return s;
}

} // namespace

double TrigPolynomial::eval(const std::vector<double>& theta) const {
    double f = has_constant ? constant : 0.0;
    for (size_t r = 0; r < reps.size(); ++r) {
        double t = dot(reps[r], theta);
        f += alpha[r] * std::cos(t) + beta[r] * std::sin(t);
    }
    return f;
}

void TrigPolynomial::eval_grad(const std::vector<double>& theta, double& f,
                               std::vector<double>& grad) const {
    f = has_constant ? constant : 0.0;
    grad.assign(theta.size(), 0.0);
    for (size_t r = 0; r < reps.size(); ++r) {
        double t = dot(reps[r], theta);
        double c = std::cos(t), s = std::sin(t);
        f += alpha[r] * c + beta[r] * s;
        double d = -alpha[r] * s + beta[r] * c;
        for (size_t i = 0; i < theta.size(); ++i) grad[i] += d * static_cast<double>(reps[r][i]);
    }
}

double TrigPolynomial::coefficient_scale() const {
    double s = has_constant ? std::fabs(constant) : 0.0;
    for (size_t r = 0; r < reps.size(); ++r)
        s += std::sqrt(alpha[r] * alpha[r] + beta[r] * beta[r]);
    return s;
}

double TrigPolynomial::gradient_bound() const {
    double s = 0.0;
    for (size_t r = 0; r < reps.size(); ++r) {
        double n2 = 0.0;
        for (auto c : reps[r]) n2 += static_cast<double>(c) * static_cast<double>(c);
        s += std::sqrt(n2) * std::sqrt(alpha[r] * alpha[r] + beta[r] * beta[r]);
    }
    return s;
}

bool TrigPolynomial::is_zero() const {
    if (has_constant && constant != 0.0) return false;
    for (size_t r = 0; r < reps.size(); ++r)
        if (alpha[r] != 0.0 || beta[r] != 0.0) return false;
    return true;
}

TrigPolynomial sample_trig(const Spectrum& s, GaussianStream& rng) {
    if (!s.symmetric) throw input_error("sampling requires a centrally symmetric spectrum");
    TrigPolynomial f;
    f.spectrum = s;
    for (const auto& p : s.points)
        if (lex_positive(p)) f.reps.push_back(p);
    double pair_scale = std::sqrt(2.0) / std::pow(kTwoPi, 0.5 * s.dim);
    f.alpha.resize(f.reps.size());
    f.beta.resize(f.reps.size());
    for (size_t r = 0; r < f.reps.size(); ++r) {
        f.alpha[r] = pair_scale * rng.normal();
        f.beta[r] = pair_scale * rng.normal();
    }
    if (s.contains(LatticePoint(s.dim, 0))) {
        f.has_constant = true;
        f.constant = rng.normal() / std::pow(kTwoPi, 0.5 * s.dim);
    }
    return f;
}

TrigPolynomial rotated(const TrigPolynomial& f, const std::vector<double>& phi) {
    TrigPolynomial g = f;
    for (size_t r = 0; r < f.reps.size(); ++r) {
        double t = dot(f.reps[r], phi);
        double c = std::cos(t), s = std::sin(t);
        g.alpha[r] = f.alpha[r] * c + f.beta[r] * s;
        g.beta[r] = -f.alpha[r] * s + f.beta[r] * c;
    }
    return g;
}

// ---------------------------------------------------------------------------
// 1-d root counting
// ---------------------------------------------------------------------------

namespace {

// Precomputed basis rows on a fixed uniform grid; evaluating one sampled
// polynomial is then a single coefficients-times-rows pass.
struct GridEval1d {
    int n_points = 0;
    std::size_t n_rows = 0;
    std::vector<double> rows;

    GridEval1d(const std::vector<LatticePoint>& reps, bool has_constant, int n_points_)
        : n_points(n_points_) {
        n_rows = 2 * reps.size() + (has_constant ? 1 : 0);
        rows.resize(n_rows * static_cast<size_t>(n_points));
        for (size_t r = 0; r < reps.size(); ++r) {
            double lam = static_cast<double>(reps[r][0]);
            for (int j = 0; j < n_points; ++j) {
                double t = lam * (kTwoPi * j / n_points);
                rows[r * n_points + j] = std::cos(t);
                rows[(reps.size() + r) * n_points + j] = std::sin(t);
            }
        }
        if (has_constant)
            for (int j = 0; j < n_points; ++j)
                rows[(n_rows - 1) * static_cast<size_t>(n_points) + j] = 1.0;
    }

    void eval(const TrigPolynomial& f, std::vector<double>& out) const {
        std::vector<double> coefs;
        coefs.reserve(n_rows);
        coefs.insert(coefs.end(), f.alpha.begin(), f.alpha.end());
        coefs.insert(coefs.end(), f.beta.begin(), f.beta.end());
        if (f.has_constant) coefs.push_back(f.constant);
        out.resize(n_points);
        kernels::active().accum_rows(out.data(), rows.data(), static_cast<size_t>(n_points),
                                     coefs.data(), coefs.size(), static_cast<size_t>(n_points));
    }
};

int count_from_values(const TrigPolynomial& f, const std::vector<double>& vals) {
    int n = static_cast<int>(vals.size());
    std::vector<std::pair<int, int>> signs; // (grid index, sign), zeros skipped
    for (int j = 0; j < n; ++j)
        if (vals[j] != 0.0) signs.push_back({j, vals[j] > 0 ? 1 : -1});
    if (signs.empty()) throw input_error("identically zero sample");

    int count = 0;
    for (size_t k = 0; k < signs.size(); ++k) {
        auto [j0, s0] = signs[k];
        auto [j1, s1] = signs[(k + 1) % signs.size()];
        if (s0 == s1) {
            // a grid point that is exactly zero between same-sign neighbors
            if ((j1 - j0 + n) % n > 1) count += 1;
            continue;
        }
        ++count;
        // bisection refinement of the bracketing interval
        double a = kTwoPi * j0 / n;
        double b = a + kTwoPi * ((j1 - j0 + n) % n) / n;
        double fa = vals[j0];
        for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
            double m = 0.5 * (a + b);
            double fm = f.eval({m});
            if (fm == 0.0) break;
            if ((fa > 0) == (fm > 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
    }
    return count;
}

std::vector<LatticePoint> positive_reps(const Spectrum& s) {
    std::vector<LatticePoint> reps;
    for (const auto& p : s.points)
        if (lex_positive(p)) reps.push_back(p);
    return reps;
}

} // namespace

int count_real_roots_1d(const TrigPolynomial& f, int grid_factor) {
    if (f.spectrum.dim != 1) throw input_error("count_real_roots_1d needs a 1-d polynomial");
    if (f.is_zero()) throw input_error("identically zero sample");
    std::int64_t deg = spectra::degree_1d(f.spectrum);
    if (deg == 0) return 0;
    GridEval1d grid(f.reps, f.has_constant, grid_factor * static_cast<int>(deg));
    std::vector<double> vals;
    grid.eval(f, vals);
    return count_from_values(f, vals);
}

Estimate estimate_expected_roots_1d(const Spectrum& s, std::size_t n_samples, std::uint64_t seed,
                                    std::vector<int>* counts_out) {
    if (s.dim != 1) throw input_error("needs a 1-d spectrum");
    if (!s.symmetric) throw input_error("needs a centrally symmetric spectrum");
    if (n_samples < 100) throw input_error("need at least 100 samples");

    std::int64_t deg = spectra::degree_1d(s);
    auto reps = positive_reps(s);
    bool has_c = s.contains(LatticePoint(1, 0));
    GridEval1d grid(reps, has_c, std::max(1, 16 * static_cast<int>(deg)));

    double sum = 0.0, sum2 = 0.0;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n_samples; ++i) {
        GaussianStream rng(mix_seed(seed, i));
        TrigPolynomial f = sample_trig(s, rng);
        int c = 0;
        if (deg > 0) {
            grid.eval(f, vals);
            c = count_from_values(f, vals);
        }
        if (counts_out) counts_out->push_back(c);
        sum += c;
        sum2 += static_cast<double>(c) * c;
    }
    double nd = static_cast<double>(n_samples);
    double mean = sum / nd;
    double var = std::max(0.0, sum2 / nd - mean * mean);
    return Estimate{mean, std::sqrt(var / nd), n_samples, seed};
}

// ---------------------------------------------------------------------------
// 2-d root counting
// ---------------------------------------------------------------------------

namespace {

double torus_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    double d = 0.0;
    for (int i = 0; i < 2; ++i) {
        double t = std::fabs(a[i] - b[i]);
        t = std::min(t, kTwoPi - t);
        d = std::max(d, t);
    }
    return d;
}

bool uses_variable(const TrigPolynomial& f, int axis) {
    for (const auto& r : f.reps)
        if (r[axis] != 0) return true;
    return false;
}

} // namespace

Roots2d count_real_roots_2d(const TrigPolynomial& f1, const TrigPolynomial& f2) {
    if (f1.spectrum.dim != 2 || f2.spectrum.dim != 2)
        throw input_error("count_real_roots_2d needs 2-d polynomials");
    if (f1.is_zero() || f2.is_zero()) throw input_error("identically zero sample");

    Roots2d out;
    for (int axis = 0; axis < 2; ++axis)
        if (!uses_variable(f1, axis) && !uses_variable(f2, axis)) out.generic = false;

    double maxnorm = 1.0;
    for (const auto* f : {&f1, &f2})
        for (const auto& r : f->reps) {
            double n2 = 0.0;
            for (auto c : r) n2 += static_cast<double>(c) * static_cast<double>(c);
            maxnorm = std::max(maxnorm, std::sqrt(n2));
        }
    int g = std::max(8, static_cast<int>(std::ceil(16.0 * maxnorm)));
    double h = kTwoPi / g;

    std::vector<double> v1(static_cast<size_t>(g) * g), v2(v1.size());
    std::vector<double> c1(v1.size()), c2(v1.size());
    {
        std::vector<double> th(2);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                th[0] = h * i;
                th[1] = h * j;
                v1[static_cast<size_t>(i) * g + j] = f1.eval(th);
                v2[static_cast<size_t>(i) * g + j] = f2.eval(th);
                th[0] = h * (i + 0.5);
                th[1] = h * (j + 0.5);
                c1[static_cast<size_t>(i) * g + j] = f1.eval(th);
                c2[static_cast<size_t>(i) * g + j] = f2.eval(th);
            }
    }
    double b1 = f1.gradient_bound(), b2 = f2.gradient_bound();
    double rad = 0.5 * h * std::sqrt(2.0);
    double scale1 = std::max(f1.coefficient_scale(), 1e-300);
    double scale2 = std::max(f2.coefficient_scale(), 1e-300);

    auto corner = [&](const std::vector<double>& v, int i, int j) {
        return v[static_cast<size_t>(i % g) * g + (j % g)];
    };
    auto candidate = [&](const std::vector<double>& v, const std::vector<double>& c, double bound,
                         int i, int j) {
        double a0 = corner(v, i, j), a1 = corner(v, i + 1, j);
        double a2 = corner(v, i, j + 1), a3 = corner(v, i + 1, j + 1);
        bool pos = a0 > 0 || a1 > 0 || a2 > 0 || a3 > 0;
        bool neg = a0 < 0 || a1 < 0 || a2 < 0 || a3 < 0;
        if (pos && neg) return true;
        return std::fabs(c[static_cast<size_t>(i) * g + j]) <= bound * rad;
    };

    std::vector<double> th(2), grad1(2), grad2(2);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            if (!candidate(v1, c1, b1, i, j) || !candidate(v2, c2, b2, i, j)) continue;
            th[0] = h * (i + 0.5);
            th[1] = h * (j + 0.5);
            double r1, r2;
            bool converged = false;
            for (int it = 0; it < 80; ++it) {
                f1.eval_grad(th, r1, grad1);
                f2.eval_grad(th, r2, grad2);
                double res = std::max(std::fabs(r1) / scale1, std::fabs(r2) / scale2);
                double det = grad1[0] * grad2[1] - grad1[1] * grad2[0];
                if (res <= 1e-11) {
                    if (std::fabs(det) <= 1e-8 * std::max(b1 * b2, 1e-300))
                        throw numeric_error("non-generic sample: near-singular root");
                    converged = true;
                    break;
                }
                if (det == 0.0 || !std::isfinite(det)) break;
                double dx = (r1 * grad2[1] - r2 * grad1[1]) / det;
                double dy = (r2 * grad1[0] - r1 * grad2[0]) / det;
                if (!std::isfinite(dx) || !std::isfinite(dy)) break;
                double base = std::hypot(r1 / scale1, r2 / scale2);
                double step = 1.0;
                bool improved = false;
                for (int halving = 0; halving < 24; ++halving) {
                    std::vector<double> trial{th[0] - step * dx, th[1] - step * dy};
                    double t1 = f1.eval(trial), t2 = f2.eval(trial);
                    if (std::hypot(t1 / scale1, t2 / scale2) < base) {
                        th = trial;
                        improved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!improved) break;
            }
            if (!converged) {
                ++out.newton_failures; // curves need not intersect inside a candidate cell
                continue;
            }
            std::array<double, 2> root{std::fmod(std::fmod(th[0], kTwoPi) + kTwoPi, kTwoPi),
                                       std::fmod(std::fmod(th[1], kTwoPi) + kTwoPi, kTwoPi)};
            bool dup = false;
            for (const auto& r : out.roots)
                if (torus_dist(r, root) <= 1e-6) {
                    dup = true;
                    break;
                }
            if (!dup) out.roots.push_back(root);
        }

    // roots separated by more than the dedup radius but less than 1e-5 mark a
    // borderline-degenerate draw; the estimators redraw those
    for (size_t a = 0; a < out.roots.size(); ++a)
        for (size_t b = a + 1; b < out.roots.size(); ++b)
            if (torus_dist(out.roots[a], out.roots[b]) < 1e-5)
                throw numeric_error("non-generic sample: ambiguous root separation");

    out.count = static_cast<int>(out.roots.size());
    return out;
}

Estimate2d estimate_expected_roots_2d(const Spectrum& s1, const Spectrum& s2,
                                      std::size_t n_samples, std::uint64_t seed) {
    if (s1.dim != 2 || s2.dim != 2) throw input_error("needs 2-d spectra");
    if (!s1.symmetric || !s2.symmetric) throw input_error("needs centrally symmetric spectra");
    if (n_samples < 1) throw input_error("needs at least one sample");

    Estimate2d out;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        int count = -1;
        for (int attempt = 0; attempt < 50; ++attempt) {
            GaussianStream rng(mix_seed(seed, i * 1024 + attempt));
            TrigPolynomial f1 = sample_trig(s1, rng);
            TrigPolynomial f2 = sample_trig(s2, rng);
            try {
                count = count_real_roots_2d(f1, f2).count;
                break;
            } catch (const numeric_error&) {
                ++out.redraws;
            }
        }
        if (count < 0) throw numeric_error("persistent non-generic samples");
        out.counts.push_back(count);
        sum += count;
        sum2 += static_cast<double>(count) * count;
    }
    double nd = static_cast<double>(n_samples);
    double mean = sum / nd;
    double var = std::max(0.0, sum2 / nd - mean * mean);
    out.estimate = Estimate{mean, std::sqrt(var / nd), n_samples, seed};
    return out;
}

// ---------------------------------------------------------------------------
// evaluation-map identities, curve length, Crofton
// ---------------------------------------------------------------------------

namespace {

// Values of the volume-normalized orthonormal basis at a torus point: 1 for
// the constant, sqrt(2) cos(lambda.theta) and sqrt(2) sin(lambda.theta) per
// representative.  In this normalization |Theta(s)|^2 = #spectrum.
void basis_values(const std::vector<LatticePoint>& reps, bool has_c,
                  const std::vector<double>& theta, std::vector<double>& out) {
    out.clear();
    const double rt2 = std::sqrt(2.0);
    if (has_c) out.push_back(1.0);
    for (const auto& r : reps) {
        double t = dot(r, theta);
        out.push_back(rt2 * std::cos(t));
        out.push_back(rt2 * std::sin(t));
    }
}

void basis_derivatives_1d(const std::vector<LatticePoint>& reps, bool has_c, double theta,
                          std::vector<double>& out) {
    out.clear();
    const double rt2 = std::sqrt(2.0);
    if (has_c) out.push_back(0.0);
    for (const auto& r : reps) {
        double lam = static_cast<double>(r[0]);
        double t = lam * theta;
        out.push_back(-rt2 * lam * std::sin(t));
        out.push_back(rt2 * lam * std::cos(t));
    }
}

} // namespace

IdentityReport evaluation_identities(const Spectrum& s, int trials, std::uint64_t seed) {
    if (s.dim != 1 && s.dim != 2) throw input_error("identities are checked in dimension 1 or 2");
    auto reps = positive_reps(s);
    bool has_c = s.contains(LatticePoint(s.dim, 0));

    GaussianStream rng(mix_seed(seed, 0xe5a1ull));
    IdentityReport rep;
    double sum_sq = s.sum_norm_sq();
    std::vector<double> theta(s.dim), b, db;
    for (int t = 0; t < std::max(1, trials); ++t) {
        for (double& x : theta) x = kTwoPi * rng.uniform();
        basis_values(reps, has_c, theta, b);
        double norm2 = 0.0;
        for (double x : b) norm2 += x * x;
        rep.norm_residual =
            std::max(rep.norm_residual, std::fabs(norm2 - static_cast<double>(s.size())));
        if (s.dim == 1) {
            basis_derivatives_1d(reps, has_c, theta[0], db);
            double d2 = 0.0;
            for (double x : db) d2 += x * x;
            rep.deriv_residual = std::max(rep.deriv_residual, std::fabs(d2 - sum_sq));
        }
    }
    return rep;
}

namespace {

// Speed of the normalized evaluation curve at theta.
double curve_speed(const std::vector<LatticePoint>& reps, bool has_c, double theta) {
    std::vector<double> b, db;
    basis_values(reps, has_c, {theta}, b);
    basis_derivatives_1d(reps, has_c, theta, db);
    double n2 = 0.0, nd = 0.0, d2 = 0.0;
    for (size_t i = 0; i < b.size(); ++i) {
        n2 += b[i] * b[i];
        nd += b[i] * db[i];
        d2 += db[i] * db[i];
    }
    double v2 = d2 / n2 - (nd * nd) / (n2 * n2);
    return std::sqrt(std::max(0.0, v2));
}

template <class F>
double adaptive_simpson(F f, double a, double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
    double m = 0.5 * (a + b);
    double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
    double sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(sl + sr - whole) < 15.0 * tol)
        return sl + sr + (sl + sr - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, sl, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, sr, 0.5 * tol, depth - 1);
}

} // namespace

CurveLength curve_length_check(const Spectrum& s) {
    if (s.dim != 1) throw input_error("curve length check is 1-d");
    auto reps = positive_reps(s);
    bool has_c = s.contains(LatticePoint(1, 0));

    CurveLength out;
    out.closed_form = kTwoPi * std::sqrt(s.sum_norm_sq() / static_cast<double>(s.size()));
    auto f = [&](double t) { return curve_speed(reps, has_c, t); };
    int pieces = 8 * std::max<int>(1, static_cast<int>(spectra::degree_1d(s)));
    double total = 0.0;
    for (int k = 0; k < pieces; ++k) {
        double a = kTwoPi * k / pieces, b = kTwoPi * (k + 1) / pieces;
        double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-10 / pieces, 30);
    }
    out.numeric = total;
    return out;
}

Estimate crofton_check(const Spectrum& s, std::size_t n_samples, std::uint64_t seed) {
    if (s.dim != 1) throw input_error("crofton check is 1-d");
    if (!s.symmetric) throw input_error("needs a centrally symmetric spectrum");

    auto reps = positive_reps(s);
    bool has_c = s.contains(LatticePoint(1, 0));
    std::int64_t deg = spectra::degree_1d(s);
    GridEval1d grid(reps, has_c, std::max(1, 16 * static_cast<int>(deg)));

    const double rt2 = std::sqrt(2.0);
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> vals;
    for (std::size_t i = 0; i < n_samples; ++i) {
        GaussianStream rng(mix_seed(seed, i));
        // Gaussian functional in the orthonormal basis; its crossings with
        // the evaluation curve are the zeros of this polynomial.
        TrigPolynomial f;
        f.spectrum = s;
        f.reps = reps;
        f.alpha.resize(reps.size());
        f.beta.resize(reps.size());
        if (has_c) {
            f.has_constant = true;
            f.constant = rng.normal();
        }
        for (size_t r = 0; r < reps.size(); ++r) {
            f.alpha[r] = rt2 * rng.normal();
            f.beta[r] = rt2 * rng.normal();
        }
        int c = 0;
        if (deg > 0) {
            grid.eval(f, vals);
            c = count_from_values(f, vals);
        }
        sum += c;
        sum2 += static_cast<double>(c) * c;
    }
    double nd = static_cast<double>(n_samples);
    double mean = sum / nd;
    double var = std::max(0.0, sum2 / nd - mean * mean);
    return Estimate{mean, std::sqrt(var / nd), n_samples, seed};
}

} // namespace kacfta::mc

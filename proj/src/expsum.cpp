#include "kacfta/expsum.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kacfta::expsum {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxContour = 1u << 22;
} // namespace

std::complex<double> ExpSum1D::eval(std::complex<double> z) const {
    std::complex<double> s = 0.0;
    for (const auto& t : terms) s += t.coef * std::exp(std::conj(t.lambda) * z);
    return s;
}

void ExpSum1D::eval_scaled(std::complex<double> z, std::complex<double>& w, double& mu) const {
    mu = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms) mu = std::max(mu, (std::conj(t.lambda) * z).real());
    w = 0.0;
    for (const auto& t : terms) w += t.coef * std::exp(std::conj(t.lambda) * z - mu);
}

ExpSum1D make_expsum(std::vector<Term> terms) {
    if (terms.empty()) throw input_error("exponential sum needs at least one term");
    for (const auto& t : terms)
        if (t.coef == std::complex<double>(0.0, 0.0))
            throw input_error("exponential sum coefficients must be nonzero");
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j)
            if (terms[i].lambda == terms[j].lambda)
                throw input_error("exponential sum frequencies must be distinct");
    return ExpSum1D{std::move(terms)};
}

convex::Polytope newton_polygon(const ExpSum1D& f) {
    std::vector<std::vector<double>> pts;
    pts.reserve(f.terms.size());
    for (const auto& t : f.terms) pts.push_back({t.lambda.real(), t.lambda.imag()});
    return convex::Polytope::from_points(pts);
}

double effective_perimeter(const convex::Polytope& p) {
    if (p.dim() != 2) throw input_error("effective perimeter is for bodies in the plane");
    if (p.affine_dim() == 0) return 0.0;
    if (p.affine_dim() == 1) return 2.0 * convex::affine_volume(p);
    const auto& cycle = p.hull().cycle;
    double len = 0.0;
    for (size_t i = 0; i < cycle.size(); ++i) {
        const auto& a = p.vertices()[cycle[i]];
        const auto& b = p.vertices()[cycle[(i + 1) % cycle.size()]];
        len += std::hypot(b[0] - a[0], b[1] - a[1]);
    }
    return len;
}

double predicted_count(const ExpSum1D& f, double r) {
    if (!(r > 0)) throw input_error("radius must be positive");
    return r / kTwoPi * effective_perimeter(newton_polygon(f));
}

namespace {

struct StageResult {
    bool steps_ok = false;       // all argument increments below pi/2
    bool near_zero = false;      // a sampled point is relatively tiny
    bool violation_small = false; // some violating step has a tiny endpoint
    long winding = 0;
    double winding_sum = 0.0;
};

// One streaming pass over n contour points.  With the dominant exponential
// factored out, |w| is the locally normalized magnitude of f: it is small
// exactly when the contour runs close to a zero.
StageResult scan_contour(const ExpSum1D& f, double r, std::size_t n) {
    StageResult out;
    out.steps_ok = true;

    std::complex<double> w_first, w_prev;
    double abs_first = 0.0, abs_prev = 0.0, max_abs = 0.0, min_abs = 1e308;
    double arg_sum = 0.0;
    double worst_violation_abs = 1e308;
    bool any_violation = false;

    for (std::size_t j = 0; j < n; ++j) {
        double t = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
        std::complex<double> z = r * std::complex<double>(std::cos(t), std::sin(t));
        std::complex<double> w;
        double mu;
        f.eval_scaled(z, w, mu);
        double a = std::abs(w);
        max_abs = std::max(max_abs, a);
        min_abs = std::min(min_abs, a);
        if (j == 0) {
            w_first = w;
            abs_first = a;
        } else {
            double step = std::arg(w * std::conj(w_prev));
            arg_sum += step;
            if (std::fabs(step) >= 0.5 * std::numbers::pi) {
                any_violation = true;
                worst_violation_abs = std::min(worst_violation_abs, std::min(a, abs_prev));
            }
        }
        w_prev = w;
        abs_prev = a;
    }
    double closing = std::arg(w_first * std::conj(w_prev));
    arg_sum += closing;
    if (std::fabs(closing) >= 0.5 * std::numbers::pi) {
        any_violation = true;
        worst_violation_abs = std::min(worst_violation_abs, std::min(abs_first, abs_prev));
    }

    out.near_zero = min_abs < 1e-9 * max_abs;
    out.steps_ok = !any_violation;
    out.violation_small = any_violation && worst_violation_abs < 1e-3 * max_abs;
    out.winding_sum = arg_sum / kTwoPi;
    out.winding = std::lround(out.winding_sum);
    return out;
}

} // namespace

DiskCountReport count_zeros_disk(const ExpSum1D& f, double r) {
    if (!(r > 0)) throw input_error("radius must be positive");
    DiskCountReport rep;
    rep.r = r;
    rep.predicted = predicted_count(f, r);

    double max_freq = 0.0;
    for (const auto& t : f.terms) max_freq = std::max(max_freq, std::abs(t.lambda));

    double r_used = r;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        std::size_t n = 512;
        while (n < 8 * static_cast<std::size_t>(r_used * max_freq + 1.0)) n *= 2;
        n = std::min(n, kMaxContour);

        bool nudge = false;
        long prev_winding = 0;
        bool have_prev = false;
        while (true) {
            StageResult st = scan_contour(f, r_used, n);
            if (st.near_zero) {
                nudge = true;
                break;
            }
            bool plausible = st.steps_ok && std::fabs(st.winding_sum - st.winding) < 0.25;
            if (plausible && have_prev && st.winding == prev_winding) {
                rep.r_used = r_used;
                rep.count = static_cast<int>(st.winding);
                rep.contour_points = n;
                return rep;
            }
            if (n >= kMaxContour) {
                // Steps below pi/2 already make the winding exact; accept a
                // single clean pass when no confirmation stage fits the budget.
                if (plausible && std::fabs(st.winding_sum - st.winding) < 0.01) {
                    rep.r_used = r_used;
                    rep.count = static_cast<int>(st.winding);
                    rep.contour_points = n;
                    return rep;
                }
                if (!st.steps_ok && st.violation_small) {
                    nudge = true; // a zero sits (numerically) on the contour
                    break;
                }
                throw numeric_error("winding count did not converge within the contour budget");
            }
            have_prev = plausible;
            if (plausible) prev_winding = st.winding;
            n *= 2;
        }
        if (nudge && attempt < 3) {
            r_used += 1e-6 * (1.0 + r_used);
            ++rep.nudges;
            continue;
        }
        throw numeric_error("contour remains too close to a zero after three nudges");
    }
    throw numeric_error("unreachable");
}

SlopeReport density_slope(const ExpSum1D& f, const std::vector<double>& radii) {
    if (radii.size() < 4) throw input_error("need at least 4 radii");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw input_error("radii must increase");
    if (!(radii.back() >= 4.0 * radii.front()))
        throw input_error("largest radius must be at least 4x the smallest");

    SlopeReport rep;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double r : radii) {
        DiskCountReport c = count_zeros_disk(f, r);
        rep.counts.push_back(c);
        sx += r;
        sy += c.count;
        sxx += r * r;
        sxy += r * static_cast<double>(c.count);
    }
    double n = static_cast<double>(radii.size());
    double den = n * sxx - sx * sx;
    rep.slope = (n * sxy - sx * sy) / den;
    rep.intercept = (sy - rep.slope * sx) / n;
    for (const auto& c : rep.counts) {
        double resid = c.count - (rep.slope * c.r + rep.intercept);
        rep.residuals.push_back(resid);
        rep.max_residual = std::max(rep.max_residual, std::fabs(resid));
    }
    return rep;
}

} // namespace kacfta::expsum

#include "kacfta/convex.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>

namespace kacfta::convex {

using exact::Dyadic;

Polytope Polytope::from_points(const std::vector<std::vector<double>>& pts) {
    if (pts.empty()) throw input_error("polytope needs at least one point");
    int d = static_cast<int>(pts[0].size());
    if (d < 1 || d > 4) throw input_error("polytope dimension must be 1..4");
    exact::HullInput raw = exact::dedup_points(pts, d);
    exact::HullData h = exact::convex_hull(raw, d);

    Polytope p;
    std::map<int, int> remap;
    for (size_t i = 0; i < h.vertices.size(); ++i) {
        int old = h.vertices[i];
        remap[old] = static_cast<int>(i);
        p.input_.pts.push_back(raw.pts[old]);
        p.input_.dpts.push_back(raw.dpts[old]);
    }
    p.hull_ = std::move(h);
    for (int& v : p.hull_.vertices) v = remap[v];
    for (int& v : p.hull_.cycle) v = remap[v];
    for (auto& f : p.hull_.facets)
        for (int& v : f) v = remap[v];
    return p;
}

double volume(const Polytope& p) {
    Dyadic scaled = exact::volume_scaled(p.hull(), p.input());
    double fact = 1.0;
    for (int i = 2; i <= p.dim(); ++i) fact *= i;
    return scaled.to_double() / fact;
}

double affine_volume(const Polytope& p) { return exact::affine_volume(p.hull(), p.input()); }

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.dim() != b.dim()) throw input_error("minkowski sum needs equal ambient dimensions");
    std::vector<std::vector<double>> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) {
            std::vector<double> s(u.size());
            for (size_t i = 0; i < u.size(); ++i) s[i] = u[i] + v[i];
            sums.push_back(std::move(s));
        }
    return Polytope::from_points(sums);
}

Polytope scaled(const Polytope& p, double t) {
    std::vector<std::vector<double>> pts = p.vertices();
    for (auto& v : pts)
        for (double& c : v) c *= t;
    return Polytope::from_points(pts);
}

Polytope translated(const Polytope& p, const std::vector<double>& shift) {
    if (static_cast<int>(shift.size()) != p.dim()) throw input_error("translation dimension mismatch");
    std::vector<std::vector<double>> pts = p.vertices();
    for (auto& v : pts)
        for (size_t i = 0; i < v.size(); ++i) v[i] += shift[i];
    return Polytope::from_points(pts);
}

double mixed_volume(const std::vector<Polytope>& bodies) {
    int n = static_cast<int>(bodies.size());
    if (n < 1 || n > 3) throw input_error("mixed volume supports 1..3 bodies");
    for (const auto& b : bodies)
        if (b.dim() != n) throw input_error("mixed volume needs n bodies in R^n");

    // n! * n! * V = sum over nonempty S of (-1)^(n-|S|) * n! * vol(sum_S A_i),
    // with n! * vol computed exactly as a dyadic.
    Dyadic acc;
    for (int mask = 1; mask < (1 << n); ++mask) {
        Polytope sum;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1 << i))) continue;
            sum = first ? bodies[i] : minkowski_sum(sum, bodies[i]);
            first = false;
        }
        Dyadic v = exact::volume_scaled(sum.hull(), sum.input());
        int bits = __builtin_popcount(static_cast<unsigned>(mask));
        acc = ((n - bits) % 2 == 0) ? acc + v : acc - v;
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return acc.to_double() / (fact * fact);
}

double support_function(const Polytope& p, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.dim()) throw input_error("direction dimension mismatch");
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : p.vertices()) {
        double s = 0.0;
        for (size_t i = 0; i < x.size(); ++i) s += v[i] * x[i];
        best = std::max(best, s);
    }
    return best;
}

std::vector<std::vector<double>> unit_directions(int dim, int count) {
    std::vector<std::vector<double>> dirs;
    if (dim == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    dirs.reserve(count);
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            double t = 2.0 * std::numbers::pi * k / count;
            dirs.push_back({std::cos(t), std::sin(t)});
        }
    } else if (dim == 3) {
        // Fibonacci sphere
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            dirs.push_back({r * std::cos(ga * k), r * std::sin(ga * k), z});
        }
    } else {
        std::mt19937_64 eng(0x9e3779b97f4a7c15ull);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        while (static_cast<int>(dirs.size()) < count) {
            std::vector<double> v(dim);
            double norm2 = 0.0;
            for (double& c : v) {
                // Box-Muller from two uniforms
                double u1 = std::max(uni(eng), 1e-300), u2 = uni(eng);
                c = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
                norm2 += c * c;
            }
            if (norm2 < 1e-12) continue;
            double inv = 1.0 / std::sqrt(norm2);
            for (double& c : v) c *= inv;
            dirs.push_back(std::move(v));
        }
    }
    return dirs;
}

double hausdorff_distance(const Polytope& p, const Polytope& q) {
    if (p.dim() != q.dim()) throw input_error("hausdorff distance needs equal ambient dimensions");
    double best = 0.0;
    for (const auto& u : unit_directions(p.dim(), 4096))
        best = std::max(best, std::fabs(support_function(p, u) - support_function(q, u)));
    return best;
}

} // namespace kacfta::convex

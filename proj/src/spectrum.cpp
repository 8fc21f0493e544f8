#include "kacfta/spectrum.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace kacfta::spectra {

using exact::Dyadic;

bool Spectrum::contains(const LatticePoint& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

double Spectrum::sum_norm_sq() const {
    double s = 0.0;
    for (const auto& p : points)
        for (auto c : p) s += static_cast<double>(c) * static_cast<double>(c);
    return s;
}

std::uint64_t Spectrum::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(dim));
    for (const auto& p : points)
        for (auto c : p) mix(static_cast<std::uint64_t>(c));
    return h;
}

Spectrum make_spectrum(const std::vector<LatticePoint>& pts) {
    if (pts.empty()) throw input_error("spectrum must be nonempty");
    Spectrum s;
    s.dim = static_cast<int>(pts[0].size());
    if (s.dim < 1) throw input_error("spectrum dimension must be >= 1");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != s.dim) throw input_error("ragged spectrum dimensions");
    std::set<LatticePoint> uniq(pts.begin(), pts.end());
    s.points.assign(uniq.begin(), uniq.end());
    s.symmetric = true;
    for (const auto& p : s.points) {
        LatticePoint neg(p.size());
        for (size_t i = 0; i < p.size(); ++i) neg[i] = -p[i];
        if (!uniq.count(neg)) {
            s.symmetric = false;
            break;
        }
    }
    return s;
}

Spectrum interval_spectrum(std::int64_t m) {
    if (m < 1) throw input_error("interval spectrum needs m >= 1");
    std::vector<LatticePoint> pts;
    pts.reserve(static_cast<size_t>(2 * m + 1));
    for (std::int64_t k = -m; k <= m; ++k) pts.push_back({k});
    return make_spectrum(pts);
}

Spectrum ball_spectrum(int n, double m) {
    if (n < 1) throw input_error("ball spectrum needs n >= 1");
    if (!(m >= 1.0)) throw input_error("ball spectrum needs m >= 1");
    std::int64_t r = static_cast<std::int64_t>(std::floor(m));
    double grid = std::pow(2.0 * r + 1.0, n);
    if (grid > 2e7) throw input_error("ball spectrum grid too large");
    Dyadic m2 = Dyadic::from_double(m) * Dyadic::from_double(m);

    std::vector<LatticePoint> pts;
    LatticePoint cur(n, -r);
    while (true) {
        std::int64_t nsq = 0;
        for (auto c : cur) nsq += c * c;
        if (Dyadic(nsq).compare(m2) <= 0) pts.push_back(cur);
        int i = 0;
        while (i < n && cur[i] == r) cur[i++] = -r;
        if (i == n) break;
        ++cur[i];
    }
    return make_spectrum(pts);
}

Spectrum dilate_spectrum(const convex::Polytope& body, double m) {
    if (!(m > 0.0)) throw input_error("dilation factor must be positive");
    int n = body.dim();
    if (body.degenerate() && !exact::affine_hull_contains_origin(body.hull(), body.input()))
        throw input_error("degenerate body must span a lattice subspace through the origin");

    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    for (int j = 0; j < n; ++j) {
        lo[j] = hi[j] = m * body.vertices()[0][j];
        for (const auto& v : body.vertices()) {
            lo[j] = std::min(lo[j], m * v[j]);
            hi[j] = std::max(hi[j], m * v[j]);
        }
    }
    std::vector<std::int64_t> lob(n), hib(n);
    double grid = 1.0;
    for (int j = 0; j < n; ++j) {
        lob[j] = static_cast<std::int64_t>(std::floor(lo[j])) - 1;
        hib[j] = static_cast<std::int64_t>(std::ceil(hi[j])) + 1;
        grid *= static_cast<double>(hib[j] - lob[j] + 1);
    }
    if (grid > 2e7) throw input_error("dilated body grid too large");

    Dyadic dm = Dyadic::from_double(m);
    std::vector<LatticePoint> pts;
    LatticePoint cur = lob;
    while (true) {
        exact::DPoint q(n);
        for (int j = 0; j < n; ++j) q[j] = Dyadic(cur[j]);
        if (exact::contains_scaled(body.hull(), body.input(), dm, q)) pts.push_back(cur);
        int i = 0;
        while (i < n && cur[i] == hib[i]) cur[i] = lob[i], ++i;
        if (i == n) break;
        ++cur[i];
    }
    if (pts.empty()) throw input_error("dilated body contains no lattice points");
    return make_spectrum(pts);
}

std::int64_t degree_1d(const Spectrum& s) {
    if (s.dim != 1) throw input_error("degree_1d needs a 1-d spectrum");
    std::int64_t d = 0;
    for (const auto& p : s.points) d = std::max<std::int64_t>(d, p[0] < 0 ? -p[0] : p[0]);
    return d;
}

convex::Polytope newton_polytope(const Spectrum& s) {
    std::vector<std::vector<double>> pts;
    pts.reserve(s.points.size());
    for (const auto& p : s.points) {
        std::vector<double> v(p.size());
        for (size_t i = 0; i < p.size(); ++i) v[i] = static_cast<double>(p[i]);
        pts.push_back(std::move(v));
    }
    return convex::Polytope::from_points(pts);
}

} // namespace kacfta::spectra

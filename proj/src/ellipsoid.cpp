#include "kacfta/ellipsoid.hpp"

#include "kacfta/errors.hpp"
#include "kacfta/kernels/kernels.hpp"
#include "kacfta/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace kacfta::ellipsoids {

double Ellipsoid::support(const std::vector<double>& x) const {
    double s = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) s += x[i] * q(i, j) * x[j];
    return std::sqrt(std::max(0.0, s));
}

SymEig sym_eig(int n, const std::vector<double>& m) {
    SymEig e;
    std::vector<double> a = m;
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
    auto at = [&](std::vector<double>& w, int i, int j) -> double& {
        return w[static_cast<size_t>(i) * n + j];
    };
    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0, scale = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j) off += std::fabs(at(a, i, j));
                scale = std::max(scale, std::fabs(at(a, i, j)));
            }
        if (off <= 1e-15 * std::max(scale, 1e-300)) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(a, p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = at(v, k, p), vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return at(a, i, i) < at(a, j, j); });
    e.values.resize(n);
    e.vectors.assign(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j) {
        e.values[j] = at(a, order[j], order[j]);
        for (int i = 0; i < n; ++i) e.vectors[static_cast<size_t>(i) * n + j] = at(v, i, order[j]);
    }
    return e;
}

Ellipsoid make_ellipsoid(int dim, std::vector<double> form) {
    if (dim < 1) throw input_error("ellipsoid dimension must be >= 1");
    if (form.size() != static_cast<size_t>(dim) * dim) throw input_error("form size mismatch");
    double scale = 0.0;
    for (double x : form) scale = std::max(scale, std::fabs(x));
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            double d = form[static_cast<size_t>(i) * dim + j] - form[static_cast<size_t>(j) * dim + i];
            if (std::fabs(d) > 1e-12 * std::max(1.0, scale))
                throw input_error("ellipsoid form is not symmetric");
            double avg = 0.5 * (form[static_cast<size_t>(i) * dim + j] +
                                form[static_cast<size_t>(j) * dim + i]);
            form[static_cast<size_t>(i) * dim + j] = avg;
            form[static_cast<size_t>(j) * dim + i] = avg;
        }
    Ellipsoid e{dim, std::move(form)};
    SymEig eig = sym_eig(dim, e.form);
    if (eig.values.front() < -1e-12 * std::max(1.0, scale))
        throw input_error("ellipsoid form is not positive semidefinite");
    return e;
}

Ellipsoid newton_ellipsoid(const spectra::Spectrum& s) {
    int n = s.dim;
    std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
    for (const auto& p : s.points)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                q[static_cast<size_t>(i) * n + j] +=
                    static_cast<double>(p[i]) * static_cast<double>(p[j]);
    double inv = 1.0 / static_cast<double>(s.size());
    for (double& x : q) x *= inv;
    return Ellipsoid{n, std::move(q)};
}

double unit_ball_volume(int k) {
    if (k < 0) throw input_error("negative dimension");
    return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

double beta_moment(int n) {
    if (n < 1) throw input_error("beta moment needs n >= 1");
    // B(3/2, (n+1)/2) via lgamma
    double lg = std::lgamma(1.5) + std::lgamma(0.5 * (n + 1)) - std::lgamma(0.5 * n + 2.0);
    return std::exp(lg);
}

double ellipsoid_volume(const Ellipsoid& e) {
    SymEig eig = sym_eig(e.dim, e.form);
    double det = 1.0;
    for (double v : eig.values) det *= std::max(0.0, v);
    if (det < 1e-300) return 0.0;
    return unit_ball_volume(e.dim) * std::sqrt(det);
}

std::vector<double> sqrt_form(const Ellipsoid& e) {
    SymEig eig = sym_eig(e.dim, e.form);
    int n = e.dim;
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        double s = std::sqrt(std::max(0.0, eig.values[k]));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a[static_cast<size_t>(i) * n + j] += s * eig.vectors[static_cast<size_t>(i) * n + k] *
                                                     eig.vectors[static_cast<size_t>(j) * n + k];
    }
    return a;
}

namespace {

constexpr std::size_t kChunk = 8192;

struct ChunkSums {
    double s[5] = {0, 0, 0, 0, 0};
};

// One chunk of the determinant-ratio estimator: fills the structure-of-arrays
// matrices for `count` samples and accumulates the five moment sums.
ChunkSums run_chunk(int n, const std::vector<std::vector<double>>& roots, std::uint64_t chunk_seed,
                    std::size_t count) {
    GaussianStream g(chunk_seed);
    std::size_t nn = static_cast<size_t>(n) * n;
    std::vector<double> m0(nn * count), m1(nn * count);
    std::vector<double> gv(n);
    for (std::size_t s = 0; s < count; ++s) {
        for (int col = 0; col < n; ++col) {
            for (int r = 0; r < n; ++r) gv[r] = g.normal();
            const auto& a = roots[col];
            for (int r = 0; r < n; ++r) {
                m0[(static_cast<size_t>(r) * n + col) * count + s] = gv[r];
                double t = 0.0;
                for (int k = 0; k < n; ++k) t += a[static_cast<size_t>(r) * n + k] * gv[k];
                m1[(static_cast<size_t>(r) * n + col) * count + s] = t;
            }
        }
    }
    ChunkSums out;
    kernels::active().abs_det_moments(static_cast<size_t>(n), m1.data(), m0.data(), count, out.s);
    return out;
}

} // namespace

Estimate mixed_volume_ellipsoids(const std::vector<Ellipsoid>& es, const McParams& mc) {
    int n = static_cast<int>(es.size());
    if (n < 1 || n > 4) throw input_error("mixed volume of ellipsoids supports 1..4 bodies");
    for (const auto& e : es)
        if (e.dim != n) throw input_error("mixed volume needs n ellipsoids in R^n");
    if (mc.samples < 10000) throw input_error("mixed volume estimator needs at least 10^4 samples");

    bool all_zero = true;
    for (const auto& e : es)
        for (double v : e.form) all_zero = all_zero && v == 0.0;
    if (all_zero) return Estimate{0.0, 0.0, mc.samples, mc.seed};

    std::vector<std::vector<double>> roots;
    roots.reserve(es.size());
    for (const auto& e : es) roots.push_back(sqrt_form(e));

    std::size_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<ChunkSums> results(n_chunks);
    auto work = [&](std::size_t c) {
        std::size_t count = std::min(kChunk, mc.samples - c * kChunk);
        results[c] = run_chunk(n, roots, mix_seed(mc.seed, c), count);
    };
    int threads = std::max(1, mc.threads);
    if (threads == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) work(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) work(c);
            });
        for (auto& th : pool) th.join();
    }

    double s1 = 0, s0 = 0, s11 = 0, s00 = 0, s10 = 0;
    for (const auto& r : results) {
        s1 += r.s[0];
        s0 += r.s[1];
        s11 += r.s[2];
        s00 += r.s[3];
        s10 += r.s[4];
    }
    double nd = static_cast<double>(mc.samples);
    double xbar = s1 / nd, ybar = s0 / nd;
    if (ybar <= 0.0) throw numeric_error("degenerate Gaussian determinant stream");
    double ratio = xbar / ybar;
    double varx = std::max(0.0, s11 / nd - xbar * xbar);
    double vary = std::max(0.0, s00 / nd - ybar * ybar);
    double covxy = s10 / nd - xbar * ybar;
    double var_ratio = (varx - 2.0 * ratio * covxy + ratio * ratio * vary) / (nd * ybar * ybar);
    double sn = unit_ball_volume(n);
    return Estimate{sn * ratio, sn * std::sqrt(std::max(0.0, var_ratio)), mc.samples, mc.seed};
}

namespace {

bool is_axis_box(const convex::Polytope& p, std::vector<double>& lo, std::vector<double>& hi) {
    int d = p.dim();
    if (p.affine_dim() != d) return false;
    lo = hi = p.vertices()[0];
    for (const auto& v : p.vertices())
        for (int j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    size_t corners = 1u << d;
    if (p.vertices().size() != corners) return false;
    for (const auto& v : p.vertices())
        for (int j = 0; j < d; ++j)
            if (v[j] != lo[j] && v[j] != hi[j]) return false;
    return true;
}

BodyEllipsoid ball_second_moment(const Ball& b) {
    if (b.dim < 1 || b.radius < 0) throw input_error("invalid ball");
    int n = b.dim;
    double q = b.radius * b.radius * (unit_ball_volume(n - 1) / unit_ball_volume(n)) * beta_moment(n);
    std::vector<double> form(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) form[static_cast<size_t>(i) * n + i] = q;
    return BodyEllipsoid{Ellipsoid{n, std::move(form)}, 0.0, true, 0};
}

BodyEllipsoid sample_second_moment(const convex::Polytope& body, const McParams& mc) {
    int d = body.dim();
    std::size_t samples = std::max<std::size_t>(mc.samples, 1000);
    std::vector<double> acc(static_cast<size_t>(d) * d, 0.0), acc2(static_cast<size_t>(d) * d, 0.0);

    GaussianStream g(mix_seed(mc.seed, 0x0b0d1ull));
    std::size_t used = 0;

    if (!body.degenerate()) {
        // rejection sampling in the bounding box
        std::vector<double> lo = body.vertices()[0], hi = body.vertices()[0];
        for (const auto& v : body.vertices())
            for (int j = 0; j < d; ++j) {
                lo[j] = std::min(lo[j], v[j]);
                hi[j] = std::max(hi[j], v[j]);
            }
        std::vector<double> x(d);
        std::size_t guard = 0;
        while (used < samples) {
            for (int j = 0; j < d; ++j) x[j] = lo[j] + (hi[j] - lo[j]) * g.uniform();
            exact::DPoint q(d);
            for (int j = 0; j < d; ++j) q[j] = exact::Dyadic::from_double(x[j]);
            if (++guard > 1000 * samples) throw numeric_error("rejection sampling stalled");
            if (!exact::contains_scaled(body.hull(), body.input(), exact::Dyadic(1), q)) continue;
            ++used;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = x[i] * x[j];
                    acc[static_cast<size_t>(i) * d + j] += v;
                    acc2[static_cast<size_t>(i) * d + j] += v * v;
                }
        }
    } else {
        // triangulation sampling inside the affine hull
        auto simplices = exact::triangulate(body.hull(), body.input());
        if (simplices.empty()) {
            // single point: Q = p p^T exactly
            const auto& pt = body.vertices()[0];
            std::vector<double> form(static_cast<size_t>(d) * d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) form[static_cast<size_t>(i) * d + j] = pt[i] * pt[j];
            return BodyEllipsoid{Ellipsoid{d, std::move(form)}, 0.0, true, 0};
        }
        int k = body.affine_dim();
        std::vector<double> weights;
        for (const auto& s : simplices) {
            // Gram k-volume of the simplex
            std::vector<std::vector<double>> dirs;
            for (size_t i = 1; i < s.size(); ++i) {
                std::vector<double> dvec(d);
                for (int j = 0; j < d; ++j)
                    dvec[j] = body.vertices()[s[i]][j] - body.vertices()[s[0]][j];
                dirs.push_back(std::move(dvec));
            }
            std::vector<double> gram(static_cast<size_t>(k) * k, 0.0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    double t = 0.0;
                    for (int c = 0; c < d; ++c) t += dirs[i][c] * dirs[j][c];
                    gram[static_cast<size_t>(i) * k + j] = t;
                }
            double det = 1.0;
            if (k == 1) det = gram[0];
            else if (k == 2) det = gram[0] * gram[3] - gram[1] * gram[2];
            else {
                det = gram[0] * (gram[4] * gram[8] - gram[5] * gram[7]) -
                      gram[1] * (gram[3] * gram[8] - gram[5] * gram[6]) +
                      gram[2] * (gram[3] * gram[7] - gram[4] * gram[6]);
            }
            weights.push_back(std::sqrt(std::max(0.0, det)));
        }
        double total = 0.0;
        for (double w : weights) total += w;
        if (total <= 0.0) throw numeric_error("degenerate body has zero measure");

        std::vector<double> bary(k + 1), x(d);
        for (used = 0; used < samples; ++used) {
            double pick = g.uniform() * total, run = 0.0;
            size_t si = 0;
            for (; si + 1 < weights.size(); ++si) {
                run += weights[si];
                if (pick < run) break;
            }
            // uniform barycentric coordinates via normalized exponentials
            double bsum = 0.0;
            for (int i = 0; i <= k; ++i) {
                double u = std::max(g.uniform(), 1e-300);
                bary[i] = -std::log(u);
                bsum += bary[i];
            }
            for (int i = 0; i <= k; ++i) bary[i] /= bsum;
            const auto& s = simplices[si];
            for (int j = 0; j < d; ++j) {
                double t = 0.0;
                for (int i = 0; i <= k; ++i) t += bary[i] * body.vertices()[s[i]][j];
                x[j] = t;
            }
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = x[i] * x[j];
                    acc[static_cast<size_t>(i) * d + j] += v;
                    acc2[static_cast<size_t>(i) * d + j] += v * v;
                }
        }
    }

    double nd = static_cast<double>(samples);
    std::vector<double> form(static_cast<size_t>(d) * d);
    double worst = 0.0;
    for (size_t i = 0; i < form.size(); ++i) {
        double mean = acc[i] / nd;
        double var = std::max(0.0, acc2[i] / nd - mean * mean);
        form[i] = mean;
        worst = std::max(worst, std::sqrt(var / nd));
    }
    // enforce exact symmetry of the averaged form
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            double avg = 0.5 * (form[static_cast<size_t>(i) * d + j] + form[static_cast<size_t>(j) * d + i]);
            form[static_cast<size_t>(i) * d + j] = avg;
            form[static_cast<size_t>(j) * d + i] = avg;
        }
    return BodyEllipsoid{Ellipsoid{d, std::move(form)}, worst, false, samples};
}

} // namespace

BodyEllipsoid body_ellipsoid(const Body& body, const McParams& mc) {
    if (std::holds_alternative<Ball>(body)) return ball_second_moment(std::get<Ball>(body));
    const auto& p = std::get<convex::Polytope>(body);
    std::vector<double> lo, hi;
    if (is_axis_box(p, lo, hi)) {
        int d = p.dim();
        std::vector<double> form(static_cast<size_t>(d) * d, 0.0);
        std::vector<double> c(d), w(d);
        for (int j = 0; j < d; ++j) {
            c[j] = 0.5 * (lo[j] + hi[j]);
            w[j] = hi[j] - lo[j];
        }
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                form[static_cast<size_t>(i) * d + j] =
                    i == j ? c[i] * c[i] + w[i] * w[i] / 12.0 : c[i] * c[j];
        return BodyEllipsoid{Ellipsoid{d, std::move(form)}, 0.0, true, 0};
    }
    return sample_second_moment(p, mc);
}

double hausdorff_distance(const Ellipsoid& a, const Ellipsoid& b) {
    if (a.dim != b.dim) throw input_error("ellipsoid dimensions differ");
    double best = 0.0;
    for (const auto& u : convex::unit_directions(a.dim, 4096))
        best = std::max(best, std::fabs(a.support(u) - b.support(u)));
    return best;
}

convex::Polytope polygon_approximation(const Ellipsoid& e, int sides) {
    if (e.dim != 2) throw input_error("polygon approximation is 2-d only");
    if (sides < 3) throw input_error("need at least 3 sides");
    std::vector<double> a = sqrt_form(e);
    std::vector<std::vector<double>> pts;
    pts.reserve(sides);
    for (int k = 0; k < sides; ++k) {
        double t = 2.0 * std::numbers::pi * k / sides;
        double u0 = std::cos(t), u1 = std::sin(t);
        pts.push_back({a[0] * u0 + a[1] * u1, a[2] * u0 + a[3] * u1});
    }
    return convex::Polytope::from_points(pts);
}

} // namespace kacfta::ellipsoids

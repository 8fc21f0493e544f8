#include "kacfta/zerofan.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace kacfta::zerofan {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

void axpy(Vec& y, double a, const Vec& x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Multiplication by i on R^{2n}: (x_k, y_k) -> (-y_k, x_k) per complex pair.
Vec times_i(const Vec& v) {
    Vec r(v.size());
    for (size_t k = 0; k + 1 < v.size(); k += 2) {
        r[k] = -v[k + 1];
        r[k + 1] = v[k];
    }
    return r;
}

/// Gram-Schmidt: orthonormal basis of span(vectors), tolerance-based.
std::vector<Vec> orthonormalize(const std::vector<Vec>& vectors) {
    std::vector<Vec> basis;
    for (Vec v : vectors) {
        for (const auto& b : basis) axpy(v, -dot(v, b), b);
        double n = norm(v);
        if (n > 1e-9) {
            for (double& c : v) c /= n;
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

/// Orthonormal complement of an orthonormal set inside R^d.
std::vector<Vec> complement(const std::vector<Vec>& basis, int d) {
    std::vector<Vec> all = basis;
    std::vector<Vec> comp;
    for (int j = 0; j < d; ++j) {
        Vec e(d, 0.0);
        e[j] = 1.0;
        for (const auto& b : all) axpy(e, -dot(e, b), b);
        double n = norm(e);
        if (n > 1e-9) {
            for (double& c : e) c /= n;
            all.push_back(e);
            comp.push_back(all.back());
        }
    }
    return comp;
}

Vec centroid(const convex::Polytope& p) {
    Vec c(p.dim(), 0.0);
    for (const auto& v : p.vertices())
        for (int j = 0; j < p.dim(); ++j) c[j] += v[j];
    for (double& x : c) x /= static_cast<double>(p.vertices().size());
    return c;
}

std::vector<Vec> face_directions(const convex::Polytope& body, const std::vector<int>& ids) {
    std::vector<Vec> dirs;
    for (size_t i = 1; i < ids.size(); ++i) {
        Vec d(body.dim());
        for (int j = 0; j < body.dim(); ++j)
            d[j] = body.vertices()[ids[i]][j] - body.vertices()[ids[0]][j];
        dirs.push_back(std::move(d));
    }
    return dirs;
}

double face_volume(const convex::Polytope& body, const std::vector<int>& ids) {
    std::vector<Vec> pts;
    for (int i : ids) pts.push_back(body.vertices()[i]);
    return convex::affine_volume(convex::Polytope::from_points(pts));
}

} // namespace

ComplexPolytope make_complex_polytope(int n, const std::vector<std::vector<double>>& vertices) {
    if (n < 1 || n > 2) throw input_error("complex polytopes support n = 1 or 2");
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != 2 * n)
            throw input_error("vertices need 2n real coordinates");
    if (vertices.size() > 64) throw input_error("at most 64 vertices");
    ComplexPolytope p;
    p.n = n;
    p.body = convex::Polytope::from_points(vertices);
    return p;
}

double face_cosine(int n, const std::vector<Vec>& tangent_basis) {
    if (static_cast<int>(tangent_basis.size()) != n) throw input_error("tangent basis must have n vectors");
    int d = 2 * n;
    std::vector<Vec> t = orthonormalize(tangent_basis);
    if (static_cast<int>(t.size()) != n) throw input_error("degenerate tangent basis");
    std::vector<Vec> perp = complement(t, d);
    std::vector<Vec> it;
    it.reserve(t.size());
    for (const auto& b : t) it.push_back(times_i(b));
    if (n == 1) return std::fabs(dot(perp[0], it[0]));
    double m00 = dot(perp[0], it[0]), m01 = dot(perp[0], it[1]);
    double m10 = dot(perp[1], it[0]), m11 = dot(perp[1], it[1]);
    return std::fabs(m00 * m11 - m01 * m10);
}

namespace {

FaceDatum body_as_face(const ComplexPolytope& p) {
    FaceDatum f;
    const auto& body = p.body;
    for (size_t i = 0; i < body.vertices().size(); ++i) f.vertex_ids.push_back(static_cast<int>(i));
    auto tangent = orthonormalize(face_directions(body, f.vertex_ids));
    f.cosine = face_cosine(p.n, tangent);
    f.n_volume = convex::affine_volume(body);
    f.cone_measure = p.n == 1 ? 2.0 : kPi; // unit ball of the full normal subspace
    f.dual_generators = complement(tangent, 2 * p.n);
    f.two_sided = true;
    return f;
}

// Outward normal of a polygon edge in the plane.
Vec edge_normal(const convex::Polytope& body, int a, int b, const Vec& inner) {
    const auto& va = body.vertices()[a];
    const auto& vb = body.vertices()[b];
    Vec nrm{vb[1] - va[1], -(vb[0] - va[0])};
    double n = norm(nrm);
    nrm[0] /= n;
    nrm[1] /= n;
    Vec mid{0.5 * (va[0] + vb[0]), 0.5 * (va[1] + vb[1])};
    if ((mid[0] - inner[0]) * nrm[0] + (mid[1] - inner[1]) * nrm[1] < 0) {
        nrm[0] = -nrm[0];
        nrm[1] = -nrm[1];
    }
    return nrm;
}

std::vector<FaceDatum> faces_n1(const ComplexPolytope& p) {
    const auto& body = p.body;
    std::vector<FaceDatum> out;
    const auto& cycle = body.hull().cycle;
    Vec inner = centroid(body);
    for (size_t i = 0; i < cycle.size(); ++i) {
        int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        FaceDatum f;
        f.vertex_ids = {a, b};
        auto tangent = orthonormalize(face_directions(body, f.vertex_ids));
        f.cosine = face_cosine(1, tangent);
        f.n_volume = face_volume(body, f.vertex_ids);
        f.cone_measure = 1.0; // a ray meets the unit disk in a unit segment
        f.dual_generators = {edge_normal(body, a, b, inner)};
        out.push_back(std::move(f));
    }
    return out;
}

// Facet polygons of a 3-dimensional body in R^4: each is a 2-face whose dual
// cone is (outward ray within the affine hull) + (the hull's normal line).
std::vector<FaceDatum> faces_k3(const ComplexPolytope& p) {
    const auto& body = p.body;
    Vec inner = centroid(body);
    std::vector<int> all_ids(body.vertices().size());
    for (size_t i = 0; i < all_ids.size(); ++i) all_ids[i] = static_cast<int>(i);
    auto hull_basis = orthonormalize(face_directions(body, all_ids));
    auto hull_normal = complement(hull_basis, 4);

    std::vector<FaceDatum> out;
    for (const auto& facet : body.hull().facets) {
        FaceDatum f;
        f.vertex_ids = facet;
        auto tangent = orthonormalize(face_directions(body, facet));
        if (tangent.size() != 2) continue;
        f.cosine = face_cosine(2, tangent);
        f.n_volume = face_volume(body, facet);
        // outward ray: the hull-tangential direction orthogonal to the facet
        Vec u(4, 0.0);
        bool found = false;
        for (const auto& w : hull_basis) {
            Vec cand = w;
            for (const auto& t : tangent) axpy(cand, -dot(cand, t), t);
            double nn = norm(cand);
            if (nn > 1e-9) {
                for (double& c : cand) c /= nn;
                u = cand;
                found = true;
                break;
            }
        }
        if (!found) throw numeric_error("facet normal not found");
        Vec ref(4);
        for (int j = 0; j < 4; ++j) ref[j] = body.vertices()[facet[0]][j] - inner[j];
        if (dot(u, ref) < 0)
            for (double& c : u) c = -c;
        f.dual_generators = {u, hull_normal[0]};
        f.cone_measure = 0.5 * kPi; // half disk: ray x normal line
        out.push_back(std::move(f));
    }
    return out;
}

// Ridges of a full-dimensional body in R^4: 2-faces shared by two facets,
// whose dual cone is the planar sector spanned by the two outward normals.
std::vector<FaceDatum> faces_k4(const ComplexPolytope& p) {
    const auto& body = p.body;
    const auto& facets = body.hull().facets;
    Vec inner = centroid(body);

    // outward unit normal per facet
    std::vector<Vec> normals;
    for (const auto& facet : facets) {
        auto dirs = face_directions(body, facet);
        auto basis = orthonormalize(dirs);
        if (basis.size() != 3) throw numeric_error("facet of unexpected dimension");
        auto comp = complement(basis, 4);
        Vec nrm = comp[0];
        Vec ref(4);
        for (int j = 0; j < 4; ++j) ref[j] = body.vertices()[facet[0]][j] - inner[j];
        if (dot(nrm, ref) < 0)
            for (double& c : nrm) c = -c;
        normals.push_back(std::move(nrm));
    }

    std::vector<FaceDatum> out;
    std::set<std::vector<int>> seen;
    for (size_t a = 0; a < facets.size(); ++a)
        for (size_t b = a + 1; b < facets.size(); ++b) {
            std::vector<int> common;
            std::set_intersection(facets[a].begin(), facets[a].end(), facets[b].begin(),
                                  facets[b].end(), std::back_inserter(common));
            if (common.size() < 3) continue;
            auto tangent = orthonormalize(face_directions(body, common));
            if (tangent.size() != 2) continue;
            if (!seen.insert(common).second) continue;
            FaceDatum f;
            f.vertex_ids = common;
            f.cosine = face_cosine(2, tangent);
            f.n_volume = face_volume(body, common);
            double ca = std::clamp(dot(normals[a], normals[b]), -1.0, 1.0);
            double theta = std::acos(ca);
            f.cone_measure = 0.5 * theta; // circular sector of the unit disk
            f.dual_generators = {normals[a], normals[b]};
            out.push_back(std::move(f));
        }
    return out;
}

} // namespace

std::vector<FaceDatum> enumerate_n_faces(const ComplexPolytope& p) {
    const int k = p.body.affine_dim();
    if (k < p.n) return {};
    if (k == p.n) return {body_as_face(p)};
    if (p.n == 1) return faces_n1(p);
    if (k == 3) return faces_k3(p);
    return faces_k4(p);
}

double pseudovolume(const ComplexPolytope& p) {
    double sigma = p.n == 1 ? 2.0 : kPi;
    double acc = 0.0;
    for (const auto& f : enumerate_n_faces(p)) acc += f.cosine * f.n_volume * f.cone_measure;
    return acc / sigma;
}

double zero_density_real_case(const std::vector<spectra::Spectrum>& spectra,
                              double region_volume) {
    int n = static_cast<int>(spectra.size());
    if (n < 1 || n > 3) throw input_error("real-case density supports 1..3 spectra");
    if (!(region_volume >= 0)) throw input_error("region volume must be nonnegative");
    std::vector<convex::Polytope> bodies;
    for (const auto& s : spectra) {
        if (s.dim != n) throw input_error("need n spectra in Z^n");
        bodies.push_back(spectra::newton_polytope(s));
    }
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return fact / std::pow(2.0 * kPi, n) * region_volume * convex::mixed_volume(bodies);
}

std::vector<RayDensity> ray_density_1d(const expsum::ExpSum1D& f) {
    convex::Polytope poly = expsum::newton_polygon(f);
    std::vector<RayDensity> out;
    if (poly.affine_dim() == 0) return out;
    if (poly.affine_dim() == 1) {
        const auto& a = poly.vertices()[0];
        const auto& b = poly.vertices()[1];
        double len = std::hypot(b[0] - a[0], b[1] - a[1]);
        Vec nrm{b[1] - a[1], -(b[0] - a[0])};
        double nn = norm(nrm);
        nrm[0] /= nn;
        nrm[1] /= nn;
        out.push_back({{nrm[0], nrm[1]}, len / (2.0 * kPi)});
        out.push_back({{-nrm[0], -nrm[1]}, len / (2.0 * kPi)});
        return out;
    }
    ComplexPolytope cp{1, poly};
    for (const auto& face : faces_n1(cp))
        out.push_back({{face.dual_generators[0][0], face.dual_generators[0][1]},
                       face.n_volume / (2.0 * kPi)});
    return out;
}

} // namespace kacfta::zerofan

#include "kacfta/exact.hpp"

#include "kacfta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace kacfta::exact {

// ---------------------------------------------------------------------------
// BigInt
// ---------------------------------------------------------------------------

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    std::uint64_t a = v > 0 ? static_cast<std::uint64_t>(v) : 0ull - static_cast<std::uint64_t>(v);
    while (a) {
        mag_.push_back(static_cast<std::uint32_t>(a & 0xffffffffu));
        a >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0u);
        r[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    // requires |a| >= |b|
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += (1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(s);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> r(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] + carry;
            r[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        size_t k = i + b.size();
        while (carry) {
            std::uint64_t cur = r[k] + carry;
            r[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = compare_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = sign_;
            r.mag_ = sub_mag(mag_, o.mag_);
        } else {
            r.sign_ = o.sign_;
            r.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    BigInt r;
    if (sign_ == 0 || o.sign_ == 0) return r;
    r.sign_ = sign_ * o.sign_;
    r.mag_ = mul_mag(mag_, o.mag_);
    r.trim();
    return r;
}

int BigInt::compare(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
    if (sign_ == 0) return 0;
    int c = compare_mag(mag_, o.mag_);
    return sign_ > 0 ? c : -c;
}

BigInt BigInt::shifted_left(std::uint64_t bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    size_t limb_shift = bits / 32;
    unsigned bit_shift = static_cast<unsigned>(bits % 32);
    r.mag_.assign(mag_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(mag_[i]) << bit_shift;
        r.mag_[i + limb_shift] |= static_cast<std::uint32_t>(v);
        r.mag_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    r.trim();
    return r;
}

BigInt BigInt::shifted_right(std::uint64_t bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    size_t limb_shift = bits / 32;
    unsigned bit_shift = static_cast<unsigned>(bits % 32);
    if (limb_shift >= mag_.size()) return BigInt();
    r.mag_.assign(mag_.size() - limb_shift, 0);
    for (size_t i = 0; i < r.mag_.size(); ++i) {
        std::uint64_t v = mag_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < mag_.size())
            v |= static_cast<std::uint64_t>(mag_[i + limb_shift + 1]) << (32 - bit_shift);
        r.mag_[i] = static_cast<std::uint32_t>(v);
    }
    r.trim();
    return r;
}

std::uint64_t BigInt::trailing_zero_bits() const {
    if (sign_ == 0) return 0;
    std::uint64_t tz = 0;
    for (size_t i = 0; i < mag_.size(); ++i) {
        if (mag_[i] == 0) {
            tz += 32;
            continue;
        }
        std::uint32_t v = mag_[i];
        while ((v & 1u) == 0) {
            ++tz;
            v >>= 1;
        }
        break;
    }
    return tz;
}

std::uint64_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    std::uint32_t top = mag_.back();
    std::uint64_t bits = (mag_.size() - 1) * 32ull;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

double BigInt::to_double(std::int64_t exp2) const {
    if (sign_ == 0) return 0.0;
    std::uint64_t bl = bit_length();
    std::uint64_t drop = bl > 64 ? bl - 64 : 0;
    BigInt top = shifted_right(drop);
    std::uint64_t v = 0;
    for (size_t i = top.mag_.size(); i-- > 0;) v = (v << 32) | top.mag_[i];
    double d = static_cast<double>(v);
    return std::ldexp(sign_ > 0 ? d : -d, static_cast<int>(exp2 + static_cast<std::int64_t>(drop)));
}

// ---------------------------------------------------------------------------
// Dyadic
// ---------------------------------------------------------------------------

Dyadic::Dyadic(std::int64_t v) : num_(v) { normalize(); }

void Dyadic::normalize() {
    if (num_.is_zero()) {
        exp_ = 0;
        return;
    }
    std::uint64_t tz = num_.trailing_zero_bits();
    if (tz) {
        num_ = num_.shifted_right(tz);
        exp_ += static_cast<std::int64_t>(tz);
    }
}

Dyadic Dyadic::from_double(double d) {
    if (!std::isfinite(d)) throw input_error("non-finite coordinate");
    Dyadic r;
    if (d == 0.0) return r;
    int e = 0;
    double m = std::frexp(d, &e);
    r.num_ = BigInt(static_cast<std::int64_t>(std::ldexp(m, 53)));
    r.exp_ = e - 53;
    r.normalize();
    return r;
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.num_ = -r.num_;
    return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    Dyadic r;
    std::int64_t e = std::min(exp_, o.exp_);
    std::uint64_t sa = static_cast<std::uint64_t>(exp_ - e);
    std::uint64_t sb = static_cast<std::uint64_t>(o.exp_ - e);
    if (sa > (1u << 22) || sb > (1u << 22)) throw numeric_error("dyadic exponent range too large");
    r.num_ = num_.shifted_left(sa) + o.num_.shifted_left(sb);
    r.exp_ = e;
    r.normalize();
    return r;
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
    Dyadic r;
    r.num_ = num_ * o.num_;
    r.exp_ = exp_ + o.exp_;
    r.normalize();
    return r;
}

int Dyadic::compare(const Dyadic& o) const { return (*this - o).sign(); }

double Dyadic::to_double() const { return num_.to_double(exp_); }

// ---------------------------------------------------------------------------
// Determinants and orientation
// ---------------------------------------------------------------------------

Dyadic det(const std::vector<DPoint>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Dyadic acc;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<DPoint> minor;
        minor.reserve(n - 1);
        for (size_t i = 1; i < n; ++i) {
            DPoint row;
            row.reserve(n - 1);
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        Dyadic term = m[0][j] * det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

int det_sign(const std::vector<DPoint>& m) { return det(m).sign(); }

static DPoint sub(const DPoint& a, const DPoint& b) {
    DPoint r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

int orientation(const std::vector<const DPoint*>& base, const DPoint& q) {
    std::vector<DPoint> m;
    m.reserve(base.size());
    for (size_t i = 1; i < base.size(); ++i) m.push_back(sub(*base[i], *base[0]));
    m.push_back(sub(q, *base[0]));
    return det_sign(m);
}

// ---------------------------------------------------------------------------
// Affine structure
// ---------------------------------------------------------------------------

static Dyadic dot(const DPoint& a, const DPoint& b) {
    Dyadic r;
    for (size_t i = 0; i < a.size(); ++i) r = r + a[i] * b[i];
    return r;
}

static bool independent_with(const std::vector<DPoint>& dirs, const DPoint& cand) {
    std::vector<DPoint> all = dirs;
    all.push_back(cand);
    size_t k = all.size();
    std::vector<DPoint> gram(k, DPoint(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) gram[i][j] = dot(all[i], all[j]);
    return det_sign(gram) != 0;
}

static bool in_span(const std::vector<DPoint>& dirs, const DPoint& v) {
    // v in span(dirs) iff adding it does not increase the rank of a basis of dirs.
    std::vector<DPoint> basis;
    for (const auto& d : dirs)
        if (independent_with(basis, d)) basis.push_back(d);
    return !independent_with(basis, v);
}

static void column_subsets(int d, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    // lexicographic k-subsets of {0..d-1}
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == d - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

AffineBasis affine_basis(const std::vector<DPoint>& pts, int ambient) {
    AffineBasis r;
    if (pts.empty()) throw input_error("empty point set");
    r.witnesses = {0};
    std::vector<DPoint> dirs;
    for (size_t i = 1; i < pts.size() && static_cast<int>(dirs.size()) < ambient; ++i) {
        DPoint cand = sub(pts[i], pts[0]);
        if (independent_with(dirs, cand)) {
            dirs.push_back(std::move(cand));
            r.witnesses.push_back(static_cast<int>(i));
        }
    }
    r.rank = static_cast<int>(dirs.size());
    if (r.rank == 0) return r;
    std::vector<std::vector<int>> subsets;
    column_subsets(ambient, r.rank, subsets);
    for (const auto& cols : subsets) {
        std::vector<DPoint> m(r.rank, DPoint(r.rank));
        for (int i = 0; i < r.rank; ++i)
            for (int j = 0; j < r.rank; ++j) m[i][j] = dirs[i][cols[j]];
        if (det_sign(m) != 0) {
            r.pivot_cols = cols;
            break;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Hull helpers
// ---------------------------------------------------------------------------

HullInput dedup_points(const std::vector<std::vector<double>>& pts, int ambient) {
    HullInput in;
    std::map<std::vector<double>, int> seen;
    for (const auto& p : pts) {
        if (static_cast<int>(p.size()) != ambient) throw input_error("inconsistent point dimension");
        if (seen.emplace(p, 1).second) in.pts.push_back(p);
    }
    in.dpts.reserve(in.pts.size());
    for (const auto& p : in.pts) {
        DPoint dp(p.size());
        for (size_t i = 0; i < p.size(); ++i) dp[i] = Dyadic::from_double(p[i]);
        in.dpts.push_back(std::move(dp));
    }
    return in;
}

static DPoint project(const DPoint& p, const std::vector<int>& cols) {
    DPoint r;
    r.reserve(cols.size());
    for (int c : cols) r.push_back(p[c]);
    return r;
}

namespace {

// Projected coordinates kept both as doubles (for the floating-point filter)
// and as dyadics (for the exact fallback when the filter cannot decide).
struct Proj {
    std::vector<std::vector<double>> d;
    std::vector<DPoint> x;
};

// Sign of (a-o) x (b-o), exact.  The double evaluation decides unless the
// result is within a generous error bound of zero.
int cross2_sign(const Proj& p, int o, int a, int b) {
    const auto &po = p.d[o], &pa = p.d[a], &pb = p.d[b];
    double t1 = (pa[0] - po[0]) * (pb[1] - po[1]);
    double t2 = (pa[1] - po[1]) * (pb[0] - po[0]);
    double value = t1 - t2;
    double mag = std::fabs(t1) + std::fabs(t2);
    if (std::fabs(value) > mag * 1e-12) return value > 0 ? 1 : -1;
    const DPoint &xo = p.x[o], &xa = p.x[a], &xb = p.x[b];
    return ((xa[0] - xo[0]) * (xb[1] - xo[1]) - (xa[1] - xo[1]) * (xb[0] - xo[0])).sign();
}

// Monotone chain; returns a ccw boundary cycle of strictly extreme points.
std::vector<int> chain2d(const Proj& p, const std::vector<int>& ids) {
    std::vector<int> order = ids;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return p.d[a] < p.d[b]; });
    auto build = [&](bool lower) {
        std::vector<int> h;
        for (size_t ii = 0; ii < order.size(); ++ii) {
            int i = order[lower ? ii : order.size() - 1 - ii];
            while (h.size() >= 2 && cross2_sign(p, h[h.size() - 2], h.back(), i) <= 0)
                h.pop_back();
            h.push_back(i);
        }
        return h;
    };
    std::vector<int> lo = build(true), hi = build(false);
    lo.pop_back();
    hi.pop_back();
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

struct Tri {
    int a, b, c;
    bool alive = true;
};

int orient3(const Proj& p, int a, int b, int c, int d) {
    const auto &pa = p.d[a], &pb = p.d[b], &pc = p.d[c], &pd = p.d[d];
    double u0 = pb[0] - pa[0], u1 = pb[1] - pa[1], u2 = pb[2] - pa[2];
    double v0 = pc[0] - pa[0], v1 = pc[1] - pa[1], v2 = pc[2] - pa[2];
    double w0 = pd[0] - pa[0], w1 = pd[1] - pa[1], w2 = pd[2] - pa[2];
    double t0 = u0 * (v1 * w2 - v2 * w1);
    double t1 = u1 * (v2 * w0 - v0 * w2);
    double t2 = u2 * (v0 * w1 - v1 * w0);
    double value = t0 + t1 + t2;
    double mag = std::fabs(u0) * (std::fabs(v1 * w2) + std::fabs(v2 * w1)) +
                 std::fabs(u1) * (std::fabs(v2 * w0) + std::fabs(v0 * w2)) +
                 std::fabs(u2) * (std::fabs(v0 * w1) + std::fabs(v1 * w0));
    if (std::fabs(value) > mag * 1e-11) return value > 0 ? 1 : -1;
    std::vector<DPoint> m{sub(p.x[b], p.x[a]), sub(p.x[c], p.x[a]), sub(p.x[d], p.x[a])};
    return det_sign(m);
}

// Incremental 3-d hull with exact predicates.  Strict visibility keeps new
// cone triangles non-degenerate: a strictly visible point is off the plane of
// every horizon edge it connects to.
std::vector<Tri> hull3d_triangles(const Proj& p, const std::vector<int>& witness) {
    int w0 = witness[0], w1 = witness[1], w2 = witness[2], w3 = witness[3];
    if (orient3(p, w0, w1, w2, w3) > 0) std::swap(w1, w2);
    std::vector<Tri> tris{{w0, w1, w2}, {w0, w3, w1}, {w1, w3, w2}, {w2, w3, w0}};
    std::set<int> used{w0, w1, w2, w3};
    for (int i = 0; i < static_cast<int>(p.d.size()); ++i) {
        if (used.count(i)) continue;
        std::vector<int> visible;
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            if (tris[t].alive && orient3(p, tris[t].a, tris[t].b, tris[t].c, i) > 0)
                visible.push_back(t);
        if (visible.empty()) continue;
        std::set<std::pair<int, int>> vis_edges;
        for (int t : visible) {
            vis_edges.insert({tris[t].a, tris[t].b});
            vis_edges.insert({tris[t].b, tris[t].c});
            vis_edges.insert({tris[t].c, tris[t].a});
        }
        for (int t : visible) tris[t].alive = false;
        for (const auto& e : vis_edges)
            if (!vis_edges.count({e.second, e.first})) tris.push_back({e.first, e.second, i});
    }
    std::vector<Tri> out;
    for (const auto& t : tris)
        if (t.alive) out.push_back(t);
    return out;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

// Merge coplanar adjacent triangles into facet polygons; each polygon is the
// exact 2-d hull of its supporting points, so mid-edge points disappear.
static std::vector<std::vector<int>> merge_facets3d(const Proj& p, const std::vector<Tri>& tris) {
    int n = static_cast<int>(tris.size());
    std::map<std::pair<int, int>, int> owner;
    for (int t = 0; t < n; ++t) {
        owner[{tris[t].a, tris[t].b}] = t;
        owner[{tris[t].b, tris[t].c}] = t;
        owner[{tris[t].c, tris[t].a}] = t;
    }
    DisjointSet ds(n);
    for (const auto& [edge, t] : owner) {
        auto it = owner.find({edge.second, edge.first});
        if (it == owner.end()) continue;
        int u = it->second;
        if (ds.find(t) == ds.find(u)) continue;
        int apex = tris[u].a + tris[u].b + tris[u].c - edge.first - edge.second;
        if (orient3(p, tris[t].a, tris[t].b, tris[t].c, apex) == 0) ds.unite(t, u);
    }
    std::map<int, std::set<int>> groups;
    for (int t = 0; t < n; ++t) {
        auto& g = groups[ds.find(t)];
        g.insert(tris[t].a);
        g.insert(tris[t].b);
        g.insert(tris[t].c);
    }
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : groups) {
        std::vector<int> ids(g.begin(), g.end());
        std::vector<DPoint> facet_pts;
        facet_pts.reserve(ids.size());
        for (int i : ids) facet_pts.push_back(p.x[i]);
        AffineBasis ab = affine_basis(facet_pts, 3);
        Proj facet_proj;
        facet_proj.d.resize(p.d.size());
        facet_proj.x.resize(p.x.size());
        for (int i : ids) {
            facet_proj.x[i] = project(p.x[i], ab.pivot_cols);
            facet_proj.d[i] = {p.d[i][ab.pivot_cols[0]], p.d[i][ab.pivot_cols[1]]};
        }
        out.push_back(chain2d(facet_proj, ids));
    }
    return out;
}

// Generalized cross product: the vector orthogonal to three vectors in R^4.
static DPoint cross4(const DPoint& u, const DPoint& v, const DPoint& w) {
    auto minor = [&](int skip) {
        std::vector<DPoint> m(3, DPoint(3));
        int col = 0;
        for (int j = 0; j < 4; ++j) {
            if (j == skip) continue;
            m[0][col] = u[j];
            m[1][col] = v[j];
            m[2][col] = w[j];
            ++col;
        }
        return det(m);
    };
    DPoint n(4);
    n[0] = minor(0);
    n[1] = -minor(1);
    n[2] = minor(2);
    n[3] = -minor(3);
    return n;
}

// Brute-force facet enumeration for full-dimensional hulls in R^4.
static std::vector<std::vector<int>> facets4d(const std::vector<DPoint>& p) {
    int n = static_cast<int>(p.size());
    if (n > 64) throw input_error("4-d hull supports at most 64 points");
    std::vector<std::uint64_t> found_masks;
    std::vector<std::vector<int>> facets;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    std::uint64_t m = (1ull << a) | (1ull << b) | (1ull << c) | (1ull << d);
                    bool covered = false;
                    for (auto fm : found_masks)
                        if ((fm & m) == m) {
                            covered = true;
                            break;
                        }
                    if (covered) continue;
                    DPoint nrm = cross4(sub(p[b], p[a]), sub(p[c], p[a]), sub(p[d], p[a]));
                    bool zero = true;
                    for (const auto& x : nrm) zero = zero && x.is_zero();
                    if (zero) continue;
                    int side = 0;
                    bool valid = true;
                    std::vector<int> on_plane;
                    for (int q = 0; q < n; ++q) {
                        int s = dot(nrm, sub(p[q], p[a])).sign();
                        if (s == 0) {
                            on_plane.push_back(q);
                        } else if (side == 0) {
                            side = s;
                        } else if (s != side) {
                            valid = false;
                            break;
                        }
                    }
                    if (!valid || side == 0) continue;
                    std::uint64_t key = 0;
                    for (int q : on_plane) key |= 1ull << q;
                    if (std::find(found_masks.begin(), found_masks.end(), key) == found_masks.end()) {
                        found_masks.push_back(key);
                        facets.push_back(on_plane);
                    }
                }
    return facets;
}

static HullData hull_of_subset(const HullInput& in, const std::vector<int>& subset);

HullData convex_hull(const HullInput& in, int ambient) {
    if (in.pts.empty()) throw input_error("convex hull of empty point set");
    if (ambient < 1 || ambient > 4) throw input_error("convex hull supports dimensions 1..4");
    HullData h;
    h.ambient = ambient;
    AffineBasis ab = affine_basis(in.dpts, ambient);
    h.affine_dim = ab.rank;
    h.pivot_cols = ab.pivot_cols;

    int n = static_cast<int>(in.pts.size());
    Proj proj;
    if (ab.rank > 0) {
        proj.d.resize(n);
        proj.x.resize(n);
        for (int i = 0; i < n; ++i) {
            proj.x[i] = project(in.dpts[i], ab.pivot_cols);
            for (int c : ab.pivot_cols) proj.d[i].push_back(in.pts[i][c]);
        }
    }

    if (ab.rank == 0) {
        h.vertices = {0};
    } else if (ab.rank == 1) {
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (proj.d[i][0] < proj.d[lo][0]) lo = i;
            if (proj.d[i][0] > proj.d[hi][0]) hi = i;
        }
        h.vertices = {lo, hi};
        h.facets = {{lo}, {hi}};
    } else if (ab.rank == 2) {
        std::vector<int> ids(n);
        for (int i = 0; i < n; ++i) ids[i] = i;
        h.cycle = chain2d(proj, ids);
        h.vertices = h.cycle;
    } else if (ab.rank == 3) {
        auto tris = hull3d_triangles(proj, ab.witnesses);
        h.facets = merge_facets3d(proj, tris);
        std::set<int> vs;
        for (const auto& f : h.facets)
            for (int v : f) vs.insert(v);
        h.vertices.assign(vs.begin(), vs.end());
    } else {
        auto fsets = facets4d(in.dpts);
        std::set<int> vs;
        for (const auto& fs : fsets) {
            HullData fh = hull_of_subset(in, fs);
            std::vector<int> canon = fh.vertices;
            std::sort(canon.begin(), canon.end());
            h.facets.push_back(canon);
            for (int v : canon) vs.insert(v);
        }
        h.vertices.assign(vs.begin(), vs.end());
    }

    std::sort(h.vertices.begin(), h.vertices.end(),
              [&](int a, int b) { return in.pts[a] < in.pts[b]; });
    return h;
}

static HullData hull_of_subset(const HullInput& in, const std::vector<int>& subset) {
    HullInput sub_in;
    for (int i : subset) {
        sub_in.pts.push_back(in.pts[i]);
        sub_in.dpts.push_back(in.dpts[i]);
    }
    HullData h = convex_hull(sub_in, static_cast<int>(in.pts[0].size()));
    auto remap = [&](std::vector<int>& v) {
        for (int& x : v) x = subset[x];
    };
    remap(h.vertices);
    remap(h.cycle);
    for (auto& f : h.facets) remap(f);
    return h;
}

std::vector<std::vector<int>> triangulate(const HullData& h, const HullInput& in) {
    std::vector<std::vector<int>> simplices;
    switch (h.affine_dim) {
    case 0:
        break;
    case 1:
        simplices.push_back({h.vertices[0], h.vertices[1]});
        break;
    case 2: {
        int v0 = h.cycle[0];
        for (size_t i = 1; i + 1 < h.cycle.size(); ++i)
            simplices.push_back({v0, h.cycle[i], h.cycle[i + 1]});
        break;
    }
    case 3: {
        int v0 = h.vertices[0];
        for (const auto& f : h.facets) {
            if (std::find(f.begin(), f.end(), v0) != f.end()) continue;
            for (size_t i = 1; i + 1 < f.size(); ++i)
                simplices.push_back({v0, f[0], f[i], f[i + 1]});
        }
        break;
    }
    case 4: {
        int v0 = h.vertices[0];
        for (const auto& f : h.facets) {
            if (std::find(f.begin(), f.end(), v0) != f.end()) continue;
            HullData fh = hull_of_subset(in, f);
            for (auto& tet : triangulate(fh, in)) {
                tet.insert(tet.begin(), v0);
                simplices.push_back(tet);
            }
        }
        break;
    }
    default:
        throw numeric_error("unsupported hull dimension");
    }
    return simplices;
}

Dyadic volume_scaled(const HullData& h, const HullInput& in) {
    if (h.affine_dim < h.ambient) return Dyadic();
    Dyadic acc;
    for (const auto& s : triangulate(h, in)) {
        std::vector<DPoint> m;
        for (size_t i = 1; i < s.size(); ++i) m.push_back(sub(in.dpts[s[i]], in.dpts[s[0]]));
        Dyadic d = det(m);
        acc = acc + (d.sign() < 0 ? -d : d);
    }
    return acc;
}

double affine_volume(const HullData& h, const HullInput& in) {
    if (h.affine_dim == 0) return 1.0;
    double fact = 1.0;
    for (int i = 2; i <= h.affine_dim; ++i) fact *= i;
    double acc = 0.0;
    for (const auto& s : triangulate(h, in)) {
        std::vector<DPoint> dirs;
        for (size_t i = 1; i < s.size(); ++i) dirs.push_back(sub(in.dpts[s[i]], in.dpts[s[0]]));
        size_t k = dirs.size();
        std::vector<DPoint> gram(k, DPoint(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) gram[i][j] = dot(dirs[i], dirs[j]);
        acc += std::sqrt(std::max(0.0, det(gram).to_double()));
    }
    return acc / fact;
}

bool contains_scaled(const HullData& h, const HullInput& in, const Dyadic& scale, const DPoint& q) {
    const auto& p = in.dpts;
    auto scaled = [&](int idx) {
        DPoint r(q.size());
        for (size_t i = 0; i < q.size(); ++i) r[i] = scale * p[idx][i];
        return r;
    };
    if (h.affine_dim == 0) {
        DPoint s0 = scaled(h.vertices[0]);
        for (size_t i = 0; i < q.size(); ++i)
            if (q[i].compare(s0[i]) != 0) return false;
        return true;
    }
    // q must lie in the (scaled) affine hull.
    {
        std::vector<DPoint> dirs;
        int v0 = h.vertices[0];
        for (size_t i = 1; i < h.vertices.size(); ++i) dirs.push_back(sub(p[h.vertices[i]], p[v0]));
        if (!in_span(dirs, sub(q, scaled(v0)))) return false;
    }
    if (h.affine_dim == 1) {
        int c = h.pivot_cols[0];
        Dyadic qa = q[c];
        Dyadic lo = scale * p[h.vertices[0]][c];
        Dyadic hi = scale * p[h.vertices[1]][c];
        if (lo.compare(hi) > 0) std::swap(lo, hi);
        return lo.compare(qa) <= 0 && qa.compare(hi) <= 0;
    }
    if (h.affine_dim == 2) {
        Dyadic qx = q[h.pivot_cols[0]], qy = q[h.pivot_cols[1]];
        for (size_t i = 0; i < h.cycle.size(); ++i) {
            int a = h.cycle[i], b = h.cycle[(i + 1) % h.cycle.size()];
            Dyadic ax = scale * p[a][h.pivot_cols[0]], ay = scale * p[a][h.pivot_cols[1]];
            Dyadic bx = scale * p[b][h.pivot_cols[0]], by = scale * p[b][h.pivot_cols[1]];
            Dyadic cr = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax);
            if (cr.sign() < 0) return false; // cycle is ccw in pivot coordinates
        }
        return true;
    }
    if (h.affine_dim == 3) {
        // Interior reference: the vertex sum (centroid times vertex count).
        DPoint vsum(3);
        for (int v : h.vertices)
            for (int j = 0; j < 3; ++j) vsum[j] = vsum[j] + p[v][h.pivot_cols[j]];
        Dyadic count(static_cast<std::int64_t>(h.vertices.size()));
        auto pc = [&](int idx) {
            DPoint r(3);
            for (int j = 0; j < 3; ++j) r[j] = p[idx][h.pivot_cols[j]];
            return r;
        };
        DPoint qp(3);
        for (int j = 0; j < 3; ++j) qp[j] = q[h.pivot_cols[j]];
        for (const auto& f : h.facets) {
            DPoint f0 = pc(f[0]), f1 = pc(f[1]), f2 = pc(f[2]);
            DPoint u = sub(f1, f0), v = sub(f2, f0);
            DPoint nrm{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
            // reference side: vsum - count*f0 (scale > 0 keeps the sign)
            Dyadic ref;
            for (int j = 0; j < 3; ++j) ref = ref + nrm[j] * (vsum[j] - count * f0[j]);
            Dyadic val;
            for (int j = 0; j < 3; ++j) val = val + nrm[j] * (qp[j] - scale * f0[j]);
            if (val.sign() != 0 && val.sign() != ref.sign()) return false;
        }
        return true;
    }
    throw input_error("membership test supports bodies of affine dimension <= 3");
}

bool affine_hull_contains_origin(const HullData& h, const HullInput& in) {
    const auto& p = in.dpts;
    int v0 = h.vertices[0];
    std::vector<DPoint> dirs;
    for (size_t i = 1; i < h.vertices.size(); ++i) dirs.push_back(sub(p[h.vertices[i]], p[v0]));
    DPoint neg(p[v0].size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -p[v0][i];
    if (dirs.empty()) {
        for (const auto& c : p[v0])
            if (!c.is_zero()) return false;
        return true;
    }
    return in_span(dirs, neg);
}

} // namespace kacfta::exact

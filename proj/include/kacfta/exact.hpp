#pragma once

// Exact arithmetic over dyadic rationals (m * 2^e with m an arbitrary-size
// integer) and the exact convex-hull machinery built on top of it.  Every
// double is a dyadic rational, so sums, differences and products of input
// coordinates are computed without rounding; geometric predicates (orientation
// signs, point-in-polytope, facet detection) are therefore exact.  No division
// is ever needed: hull predicates, volumes and mixed volumes are polynomial in
// the inputs.

#include <array>
#include <cstdint>
#include <vector>

namespace kacfta::exact {

/// Sign-magnitude arbitrary-precision integer, base 2^32.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;

    /// -1, 0, +1 as *this <, ==, > o.
    int compare(const BigInt& o) const;

    BigInt shifted_left(std::uint64_t bits) const;
    /// Exact right shift; the low `bits` bits must be zero.
    BigInt shifted_right(std::uint64_t bits) const;
    std::uint64_t trailing_zero_bits() const;
    std::uint64_t bit_length() const;

    /// Nearest double to (*this) * 2^exp2.
    double to_double(std::int64_t exp2) const;

private:
    int sign_ = 0;
    std::vector<std::uint32_t> mag_; // little-endian, no leading zero limbs

    static int compare_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    void trim();
};

/// Dyadic rational num * 2^exp, normalized so num is odd (or zero).
class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t v);
    static Dyadic from_double(double d); // exact; throws on non-finite input

    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }

    Dyadic operator-() const;
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;

    int compare(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const { return compare(o) == 0; }

    double to_double() const;

private:
    BigInt num_;
    std::int64_t exp_ = 0;
    void normalize();
};

using DPoint = std::vector<Dyadic>;

/// Exact determinant of a k x k matrix, k <= 5, by cofactor expansion.
Dyadic det(const std::vector<DPoint>& m);
int det_sign(const std::vector<DPoint>& m);

/// Orientation of q against the hyperplane spanned by p[1]-p[0], ..., p[k-1]-p[0]
/// in R^k: sign of det(p[1]-p[0], ..., p[k-1]-p[0], q-p[0]).
int orientation(const std::vector<const DPoint*>& base, const DPoint& q);

/// Affine structure of a point set.
struct AffineBasis {
    int rank = 0;                 // affine dimension k
    std::vector<int> witnesses;   // k+1 indices with independent difference vectors
    std::vector<int> pivot_cols;  // k coordinate axes onto which projection is injective
};
AffineBasis affine_basis(const std::vector<DPoint>& pts, int ambient);

/// Convex hull of points in R^d, d <= 4, with exact predicates.  Degenerate
/// inputs are reduced to their affine hull first; indices refer to the
/// deduplicated input.
struct HullData {
    int ambient = 0;
    int affine_dim = 0;
    std::vector<int> pivot_cols;
    std::vector<int> vertices; // extreme points, sorted lexicographically by coords

    // Structure in projected (pivot) coordinates:
    //   affine_dim 2: `cycle` is the hull boundary walk;
    //   affine_dim 3: `facets` are merged coplanar facet polygons (cyclic);
    //   affine_dim 4: `facets` are facet vertex sets (sorted, not cyclic).
    std::vector<int> cycle;
    std::vector<std::vector<int>> facets;
};

struct HullInput {
    std::vector<std::vector<double>> pts; // deduplicated
    std::vector<DPoint> dpts;
};

HullData convex_hull(const HullInput& in, int ambient);
HullInput dedup_points(const std::vector<std::vector<double>>& pts, int ambient);

/// Simplices (affine_dim+1 point indices each) covering the hull.
std::vector<std::vector<int>> triangulate(const HullData& h, const HullInput& in);

/// d! * (d-dimensional volume) as an exact dyadic; zero for degenerate bodies.
Dyadic volume_scaled(const HullData& h, const HullInput& in);

/// Volume of the body inside its affine hull (Euclidean k-volume), as double.
double affine_volume(const HullData& h, const HullInput& in);

/// Exact membership of q in scale * conv(points described by h).
bool contains_scaled(const HullData& h, const HullInput& in, const Dyadic& scale, const DPoint& q);

/// True if the affine hull of the body passes through the origin (exactly).
bool affine_hull_contains_origin(const HullData& h, const HullInput& in);

} // namespace kacfta::exact

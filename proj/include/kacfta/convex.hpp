#pragma once

// Exact convex geometry in ambient dimension up to 4: hulls, volumes,
// Minkowski sums, mixed volumes by inclusion-exclusion, support functions and
// Hausdorff distance between convex bodies.

#include "kacfta/exact.hpp"

#include <vector>

namespace kacfta::convex {

class Polytope {
public:
    /// Convex hull of the given points; vertices are canonicalized to the
    /// extreme points in lexicographic order.
    static Polytope from_points(const std::vector<std::vector<double>>& pts);

    int dim() const { return hull_.ambient; }
    int affine_dim() const { return hull_.affine_dim; }
    bool degenerate() const { return hull_.affine_dim < hull_.ambient; }
    const std::vector<std::vector<double>>& vertices() const { return input_.pts; }

    const exact::HullData& hull() const { return hull_; }
    const exact::HullInput& input() const { return input_; }

private:
    exact::HullInput input_; // canonical vertices only
    exact::HullData hull_;   // structure over the canonical vertices
};

/// Ambient-dimension Lebesgue volume (0 for degenerate bodies).
double volume(const Polytope& p);

/// Volume of the body inside its own affine hull.
double affine_volume(const Polytope& p);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

Polytope scaled(const Polytope& p, double t);

Polytope translated(const Polytope& p, const std::vector<double>& shift);

/// Mixed volume V(A_1,...,A_n) of n bodies in R^n, n <= 3, normalized so that
/// V(A,...,A) = vol(A).  Computed by inclusion-exclusion over Minkowski sums
/// with exact interior arithmetic.
double mixed_volume(const std::vector<Polytope>& bodies);

double support_function(const Polytope& p, const std::vector<double>& x);

/// Sup distance of support functions over a dense quasi-uniform direction
/// net (>= 4096 directions); an approximation of the Hausdorff metric that
/// underestimates by at most diameter times the squared angular gap.
double hausdorff_distance(const Polytope& p, const Polytope& q);

/// Deterministic quasi-uniform unit directions (shared by the Hausdorff
/// distance and the ellipsoid module).
std::vector<std::vector<double>> unit_directions(int dim, int count);

} // namespace kacfta::convex

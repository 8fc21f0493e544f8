#pragma once

// Newton ellipsoids of spectra and of continuum bodies, plus volumes and
// Monte Carlo mixed volumes of centered ellipsoids.

#include "kacfta/convex.hpp"
#include "kacfta/spectrum.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace kacfta::ellipsoids {

/// Centered ellipsoid given by a symmetric positive-semidefinite form Q;
/// the body is A * (unit ball) for A the symmetric square root of Q, and its
/// support function is sqrt(x^T Q x).
struct Ellipsoid {
    int dim = 0;
    std::vector<double> form; // row-major dim x dim

    double q(int i, int j) const { return form[static_cast<size_t>(i) * dim + j]; }
    double support(const std::vector<double>& x) const;
};

/// Validates symmetry (tolerance 1e-12) and positive semidefiniteness
/// (eigenvalues >= -1e-12; negatives are treated as 0 downstream).
Ellipsoid make_ellipsoid(int dim, std::vector<double> form);

/// Q = (1/#spectrum) * sum of lambda lambda^T.  The closed-form root
/// statistics assume a centrally symmetric spectrum; the form itself is
/// evaluated for any spectrum.
Ellipsoid newton_ellipsoid(const spectra::Spectrum& s);

struct SymEig {
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row-major; column j is the j-th eigenvector
};
SymEig sym_eig(int n, const std::vector<double>& m);

/// Volume of the k-dimensional unit ball.
double unit_ball_volume(int k);

/// The moment integral over [-1,1] of x^2 (1-x^2)^((n-1)/2).
double beta_moment(int n);

/// sigma_n * sqrt(det Q); 0 when Q is singular.
double ellipsoid_volume(const Ellipsoid& e);

/// Symmetric PSD square root of Q (negative eigenvalues clamped to 0).
std::vector<double> sqrt_form(const Ellipsoid& e);

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct McParams {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Mixed volume of n centered ellipsoids in R^n (n <= 4) by the Gaussian
/// determinant ratio estimator
///   V ~ sigma_n * E|det(A_1 g_1,...,A_n g_n)| / E|det(g_1,...,g_n)|
/// with both expectations taken over the same sample stream.  Deterministic
/// given (seed, samples) for any thread count.
Estimate mixed_volume_ellipsoids(const std::vector<Ellipsoid>& es, const McParams& mc);

struct Ball {
    int dim = 0;
    double radius = 1.0;
};

using Body = std::variant<convex::Polytope, Ball>;

struct BodyEllipsoid {
    Ellipsoid ellipsoid;
    double stderr_max = 0.0; // largest per-entry standard error (0 for exact forms)
    bool exact = false;
    std::size_t samples_used = 0;
};

/// Second-moment form of the uniform distribution on the body, about the
/// origin: Q = (1/vol) * integral of x x^T.  Exact for balls and axis-aligned
/// boxes; seeded Monte Carlo otherwise (rejection sampling for solid bodies,
/// triangulation sampling inside the affine hull for degenerate ones).
BodyEllipsoid body_ellipsoid(const Body& body, const McParams& mc);

double hausdorff_distance(const Ellipsoid& a, const Ellipsoid& b);

/// Inscribed polygon with `sides` vertices on the boundary of a 2-d
/// ellipsoid; the polytope oracle for mixed-volume checks.
convex::Polytope polygon_approximation(const Ellipsoid& e, int sides);

} // namespace kacfta::ellipsoids

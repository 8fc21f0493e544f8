#pragma once

// Asymptotic zero distribution of exponential-sum systems in the
// top-dimensional case: dual fans of Newton polytopes in complex space,
// face cosines, cone densities, and the pseudovolume.

#include "kacfta/convex.hpp"
#include "kacfta/expsum.hpp"
#include "kacfta/spectrum.hpp"

#include <array>
#include <vector>

namespace kacfta::zerofan {

/// Polytope in C^n, stored over R^{2n} with coordinates
/// (re z_1, im z_1, ..., re z_n, im z_n); n <= 2.
struct ComplexPolytope {
    int n = 0;
    convex::Polytope body;
};

ComplexPolytope make_complex_polytope(int n, const std::vector<std::vector<double>>& vertices);

/// An n-real-dimensional face of the polytope together with the data feeding
/// the density formula: the cosine between the face's orthogonal complement
/// and its multiplied-by-i tangent space, the face n-volume, and the measure
/// of the dual cone inside the unit ball.
struct FaceDatum {
    std::vector<int> vertex_ids;
    double cosine = 0.0;
    double n_volume = 0.0;
    double cone_measure = 0.0;
    std::vector<std::vector<double>> dual_generators;
    bool two_sided = false; // the dual "cone" of a degenerate body is a full subspace
};

/// All n-dimensional faces.  A body of affine dimension n is its own single
/// (two-sided) face; a full-dimensional body contributes ridges; bodies of
/// affine dimension below n have none.
std::vector<FaceDatum> enumerate_n_faces(const ComplexPolytope& p);

/// |det(B1^T B2)| for orthonormal bases B1 of the face's orthogonal
/// complement and B2 of i times its tangent space.
double face_cosine(int n, const std::vector<std::vector<double>>& tangent_basis);

/// (1/sigma_n) * sum over n-faces of cosine * vol_n(face) * vol_n(dual cone
/// within the unit ball).  Equals the ordinary volume for real bodies and the
/// semiperimeter for n = 1.
double pseudovolume(const ComplexPolytope& p);

/// Expected zero count in a region of imaginary volume `region_volume` for a
/// random system with real integer frequencies:
/// n!/(2pi)^n * region_volume * mixed volume of the Newton polytopes.
double zero_density_real_case(const std::vector<spectra::Spectrum>& spectra, double region_volume);

struct RayDensity {
    std::array<double, 2> direction; // unit outward normal, identified with a ray in C
    double density = 0.0;            // zeros per unit radius along the ray
};

/// Linear zero densities of a one-variable exponential sum along the outward
/// normals of its Newton polygon sides; densities sum to the count slope.
std::vector<RayDensity> ray_density_1d(const expsum::ExpSum1D& f);

} // namespace kacfta::zerofan

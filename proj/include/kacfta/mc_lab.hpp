#pragma once

// Empirical verification lab: Gaussian samples of trigonometric polynomials,
// root counting on the circle and the 2-torus, evaluation-map identities and
// the Crofton comparison.

#include "kacfta/ellipsoid.hpp" // Estimate
#include "kacfta/rng.hpp"
#include "kacfta/spectrum.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace kacfta::mc {

using ellipsoids::Estimate;

/// Real trigonometric polynomial on the n-torus.  Coefficients are stored for
/// one lexicographically positive representative of each +-pair of nonzero
/// frequencies, plus a plain constant when 0 belongs to the spectrum.
struct TrigPolynomial {
    spectra::Spectrum spectrum;
    std::vector<spectra::LatticePoint> reps;
    std::vector<double> alpha; // cos coefficient per representative
    std::vector<double> beta;  // sin coefficient per representative
    double constant = 0.0;
    bool has_constant = false;

    double eval(const std::vector<double>& theta) const;
    void eval_grad(const std::vector<double>& theta, double& f, std::vector<double>& grad) const;

    /// Sum of sqrt(alpha^2+beta^2) plus |constant|: a sup-norm bound.
    double coefficient_scale() const;
    /// Bound on |grad f| over the torus.
    double gradient_bound() const;
    bool is_zero() const;
};

/// Gaussian sample in the L2 basis of the torus: independent standard
/// normals on sqrt(2)/(2pi)^(n/2) cos, sqrt(2)/(2pi)^(n/2) sin per frequency
/// pair and 1/(2pi)^(n/2) for the constant.  Requires central symmetry.
TrigPolynomial sample_trig(const spectra::Spectrum& s, GaussianStream& rng);

/// f(theta + phi): the coefficient pairs rotated by the frequency angles.
TrigPolynomial rotated(const TrigPolynomial& f, const std::vector<double>& phi);

/// Zeros of a 1-d trigonometric polynomial on [0, 2pi), located by a sign
/// scan over grid_factor * degree points and bisection refinement to 1e-12.
/// Tangential (even-order) zeros may be undercounted.
int count_real_roots_1d(const TrigPolynomial& f, int grid_factor = 16);

Estimate estimate_expected_roots_1d(const spectra::Spectrum& s, std::size_t n_samples,
                                    std::uint64_t seed, std::vector<int>* counts_out = nullptr);

struct Roots2d {
    int count = 0;
    bool generic = true;           // false if some torus variable is unused by both inputs
    std::size_t newton_failures = 0; // candidate cells whose Newton run did not converge
    std::vector<std::array<double, 2>> roots;
};

/// Common zeros of two trigonometric polynomials on the 2-torus: subdivision
/// into cells of side at most pi/(8 max|lambda|), damped Newton from the
/// candidate cells, dedup within 1e-6 torus distance.  Throws numeric_error
/// on a non-generic sample (near-singular root, ambiguous dedup distance).
Roots2d count_real_roots_2d(const TrigPolynomial& f1, const TrigPolynomial& f2);

struct Estimate2d {
    Estimate estimate;
    std::size_t redraws = 0;
    std::vector<int> counts; // per accepted sample, for CSV emission
};

Estimate2d estimate_expected_roots_2d(const spectra::Spectrum& s1, const spectra::Spectrum& s2,
                                      std::size_t n_samples, std::uint64_t seed);

struct IdentityReport {
    double norm_residual = 0.0;  // max | |Theta(s)|^2 - #spectrum |
    double deriv_residual = -1.0; // max | |Theta'(s)|^2 - sum lambda^2 |, 1-d only
};

/// Residuals of the evaluation-map identities at random torus points
/// (dimension 1 or 2).
IdentityReport evaluation_identities(const spectra::Spectrum& s, int trials, std::uint64_t seed);

struct CurveLength {
    double numeric = 0.0;     // adaptive quadrature of the normalized evaluation curve
    double closed_form = 0.0; // 2 pi sqrt(sum lambda^2 / #spectrum)
};

CurveLength curve_length_check(const spectra::Spectrum& s);

/// Monte Carlo mean of the crossing count of the evaluation curve with random
/// Gaussian hyperplanes; the mean estimates curve length / pi.
Estimate crofton_check(const spectra::Spectrum& s, std::size_t n_samples, std::uint64_t seed);

} // namespace kacfta::mc

#pragma once

// Closed-form root statistics of random real Laurent polynomials: expected
// real-root counts, real-root probabilities, generic total counts, and the
// asymptotic constants controlling expanding spectra.

#include "kacfta/ellipsoid.hpp"
#include "kacfta/spectrum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kacfta::kac {

/// An exact value of the form num/den * pi^pi_power.
struct ExactConstant {
    std::int64_t num = 0;
    std::int64_t den = 1;
    int pi_power = 0;

    double value() const;
    std::string to_string() const;
};

/// Expected number of real roots of a random real Laurent polynomial:
/// 2 * sqrt(sum(lambda^2) / #spectrum).  Requires a centrally symmetric
/// 1-d spectrum.
double expected_real_roots_1d(const spectra::Spectrum& s);

/// Probability that a root is real: the expected count divided by the
/// generic total 2*deg.  Requires degree >= 1.  For interval spectra
/// {-m..m} this is sqrt((m+1)/(3m)) -> 1/sqrt(3), a positive limit; the
/// classical Kac count ~ (2/pi) log m for ordinary degree-m polynomials
/// (probability ~ (2/pi) log m / m -> 0) is quoted for contrast only and
/// not computed here.
double prob_real_1d(const spectra::Spectrum& s);

struct KacReport {
    double expected_real_roots = 0.0;
    double total_roots = 0.0;
    double prob_real = 0.0;
    double stderr_ = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> spectra_hashes;
};

/// n! times the mixed volume of the spectra's Newton ellipsoids.  Exact
/// (no sampling) when n = 1 or when all spectra coincide; otherwise the
/// Gaussian determinant estimator runs with the given parameters.
ellipsoids::Estimate expected_real_roots(const std::vector<spectra::Spectrum>& spectra,
                                         const ellipsoids::McParams& mc);

/// n! times the mixed volume of the Newton polytopes: the generic number of
/// torus roots of a sparse system (n <= 3).
double bkk_count(const std::vector<spectra::Spectrum>& spectra);

/// Full report: expected real roots, generic total, and their ratio.
KacReport prob_real(const std::vector<spectra::Spectrum>& spectra, const ellipsoids::McParams& mc);

/// The moment integral over [-1,1] of x^2 (1-x^2)^((n-1)/2), exact rational
/// (n odd) or rational multiple of pi (n even); n <= 20.
ExactConstant beta_exact(int n);
double beta_n(int n);

/// Volume of the k-dimensional unit ball, exact for k <= 20.
ExactConstant sigma_exact(int k);
double sigma_n(int k);

/// Limit of the real-root probability over spectra filling expanding balls:
/// ((sigma_{n-1}/sigma_n) * beta_n)^(n/2).
double asymptotic_prob_ball(int n);

/// Limit of the real-root probability for spectra filling dilates of the
/// given bodies: mixed volume of the bodies' second-moment ellipsoids over
/// the mixed volume of the bodies.
double asymptotic_prob_bodies(const std::vector<ellipsoids::Body>& bodies,
                              const ellipsoids::McParams& mc);

} // namespace kacfta::kac

#pragma once

// One-variable exponential sums: Newton polygon, argument-principle zero
// counting in disks, and the linear zero-density law.

#include "kacfta/convex.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace kacfta::expsum {

struct Term {
    std::complex<double> lambda; // spectrum point
    std::complex<double> coef;   // nonzero
};

/// f(z) = sum of coef * exp(conj(lambda) * z) over the terms.
struct ExpSum1D {
    std::vector<Term> terms;

    std::complex<double> eval(std::complex<double> z) const;

    /// f(z) = w * exp(mu) with mu = max over terms of Re(conj(lambda) z);
    /// keeps |w| in a representable range on large contours.
    void eval_scaled(std::complex<double> z, std::complex<double>& w, double& mu) const;
};

ExpSum1D make_expsum(std::vector<Term> terms);

/// Hull of the spectrum in the (Re, Im) plane.
convex::Polytope newton_polygon(const ExpSum1D& f);

/// Boundary length of a 2-d body, twice the length of a degenerate segment,
/// 0 for a point.
double effective_perimeter(const convex::Polytope& p);

/// Leading term of the zero count: (r / 2pi) * effective perimeter of the
/// Newton polygon.
double predicted_count(const ExpSum1D& f, double r);

struct DiskCountReport {
    double r = 0.0;      // requested radius
    double r_used = 0.0; // after any boundary nudges
    int count = 0;
    double predicted = 0.0;
    std::size_t contour_points = 0;
    int nudges = 0;
};

/// Exact zero count inside |z| < r by winding-number tracking: the contour is
/// refined until every argument step is below pi/2 and two successive
/// refinements agree.  A contour running through a zero is nudged outward by
/// 1e-6 (1+r), at most three times, and the nudge is reported.
DiskCountReport count_zeros_disk(const ExpSum1D& f, double r);

struct SlopeReport {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::vector<double> residuals;
    std::vector<DiskCountReport> counts;
};

/// Least-squares slope of count vs radius over the given increasing radii
/// (at least 4, spanning a factor of 4), with the flat-residual diagnostic.
SlopeReport density_slope(const ExpSum1D& f, const std::vector<double>& radii);

} // namespace kacfta::expsum

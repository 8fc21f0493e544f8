#pragma once

// Finite lattice spectra: frequency sets of real Laurent / trigonometric
// polynomials, and their basic invariants.

#include "kacfta/convex.hpp"

#include <cstdint>
#include <vector>

namespace kacfta::spectra {

using LatticePoint = std::vector<std::int64_t>;

/// A nonempty, deduplicated, lexicographically sorted set of integer
/// frequency vectors sharing one dimension.
struct Spectrum {
    int dim = 0;
    std::vector<LatticePoint> points;
    bool symmetric = false; // centrally symmetric: p in set iff -p in set

    std::size_t size() const { return points.size(); }
    bool contains(const LatticePoint& p) const;

    /// Sum over the spectrum of |lambda|^2 (trace of the frequency Gram sum).
    double sum_norm_sq() const;

    /// FNV-style content hash, used to echo inputs in reports.
    std::uint64_t hash() const;
};

Spectrum make_spectrum(const std::vector<LatticePoint>& pts);

/// The 1-d interval spectrum {-m,...,0,...,m}; m >= 1.
Spectrum interval_spectrum(std::int64_t m);

/// All lattice points of Euclidean norm <= m in Z^n; n >= 1, m >= 1.
Spectrum ball_spectrum(int n, double m);

/// Lattice points contained in the closed dilate m * body (boundary points
/// included, decided with exact arithmetic).  A degenerate body is accepted
/// only when its affine hull is a linear subspace through the origin.
Spectrum dilate_spectrum(const convex::Polytope& body, double m);

/// max |lambda| for a 1-d spectrum.
std::int64_t degree_1d(const Spectrum& s);

/// Convex hull of the spectrum's points (the Newton polytope).
convex::Polytope newton_polytope(const Spectrum& s);

} // namespace kacfta::spectra

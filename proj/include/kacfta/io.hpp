#pragma once

// Text and JSON formats shared by the CLI and the golden-file tests.

#include "kacfta/convex.hpp"
#include "kacfta/ellipsoid.hpp"
#include "kacfta/expsum.hpp"
#include "kacfta/kac.hpp"
#include "kacfta/spectrum.hpp"
#include "kacfta/zerofan.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kacfta::io {

/// Spectrum text format: first line "n <dim>", then one lattice point per
/// line as whitespace-separated integers; '#' starts a comment line.
spectra::Spectrum read_spectrum(std::istream& in);
spectra::Spectrum read_spectrum_file(const std::string& path);
std::string write_spectrum(const spectra::Spectrum& s);

/// Exponential sum text format: one term per line,
/// "re(lambda) im(lambda) re(c) im(c)"; '#' starts a comment line.
expsum::ExpSum1D read_expsum(std::istream& in);
expsum::ExpSum1D read_expsum_file(const std::string& path);
std::string write_expsum(const expsum::ExpSum1D& f);

// JSON artifacts (field names are frozen).
std::string polytope_json(const convex::Polytope& p);
convex::Polytope parse_polytope_json(const std::string& text);

std::string ellipsoid_json(const ellipsoids::Ellipsoid& e);
ellipsoids::Ellipsoid parse_ellipsoid_json(const std::string& text);

std::string complex_polytope_json(const zerofan::ComplexPolytope& p);
zerofan::ComplexPolytope parse_complex_polytope_json(const std::string& text);

std::string estimate_json(const ellipsoids::Estimate& e);
std::string kac_report_json(const kac::KacReport& r);
std::string disk_report_json(const expsum::DiskCountReport& r);

/// sample_index,root_count rows with a header.
std::string counts_csv(const std::vector<int>& counts);

/// Lossless decimal rendering (17 significant digits).
std::string format_number(double x);

} // namespace kacfta::io

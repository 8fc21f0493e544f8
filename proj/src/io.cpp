#include "kacfta/io.hpp"

#include "kacfta/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace kacfta::io {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail_line(const std::string& what, int line) {
    throw input_error(what + " (line " + std::to_string(line) + ")");
}

} // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

spectra::Spectrum read_spectrum(std::istream& in) {
    std::string line;
    int line_no = 0;
    int dim = -1;
    std::vector<spectra::LatticePoint> pts;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        if (dim < 0) {
            std::string tag;
            if (!(ss >> tag)) continue; // blank line before the header
            if (tag != "n") fail_line("expected spectrum header 'n <dim>'", line_no);
            if (!(ss >> dim) || dim < 1) fail_line("bad spectrum dimension", line_no);
            continue;
        }
        spectra::LatticePoint p;
        std::int64_t v;
        while (ss >> v) p.push_back(v);
        if (!ss.eof()) fail_line("bad integer in spectrum point", line_no);
        if (p.empty()) continue;
        if (static_cast<int>(p.size()) != dim) fail_line("wrong point dimension", line_no);
        pts.push_back(std::move(p));
    }
    if (dim < 0) throw input_error("missing spectrum header 'n <dim>'");
    if (pts.empty()) throw input_error("spectrum file has no points");
    return spectra::make_spectrum(pts);
}

spectra::Spectrum read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return read_spectrum(in);
}

std::string write_spectrum(const spectra::Spectrum& s) {
    std::ostringstream out;
    out << "n " << s.dim << "\n";
    for (const auto& p : s.points) {
        for (size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << "\n";
    }
    return out.str();
}

expsum::ExpSum1D read_expsum(std::istream& in) {
    std::string line;
    int line_no = 0;
    std::vector<expsum::Term> terms;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        double lr, li, cr, ci;
        if (!(ss >> lr)) continue;
        if (!(ss >> li >> cr >> ci)) fail_line("term needs 4 numbers", line_no);
        std::string extra;
        if (ss >> extra) fail_line("trailing tokens after term", line_no);
        terms.push_back({{lr, li}, {cr, ci}});
    }
    return expsum::make_expsum(std::move(terms));
}

expsum::ExpSum1D read_expsum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return read_expsum(in);
}

std::string write_expsum(const expsum::ExpSum1D& f) {
    std::ostringstream out;
    for (const auto& t : f.terms)
        out << format_number(t.lambda.real()) << " " << format_number(t.lambda.imag()) << " "
            << format_number(t.coef.real()) << " " << format_number(t.coef.imag()) << "\n";
    return out.str();
}

std::string polytope_json(const convex::Polytope& p) {
    json j;
    j["dim"] = p.dim();
    j["vertices"] = p.vertices();
    return j.dump();
}

convex::Polytope parse_polytope_json(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    if (!j.contains("dim") || !j.contains("vertices"))
        throw input_error("polytope JSON needs dim and vertices");
    int dim = j["dim"].get<int>();
    auto vertices = j["vertices"].get<std::vector<std::vector<double>>>();
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != dim) throw input_error("vertex dimension mismatch");
    return convex::Polytope::from_points(vertices);
}

std::string ellipsoid_json(const ellipsoids::Ellipsoid& e) {
    json j;
    j["dim"] = e.dim;
    json rows = json::array();
    for (int i = 0; i < e.dim; ++i) {
        json row = json::array();
        for (int k = 0; k < e.dim; ++k) row.push_back(e.q(i, k));
        rows.push_back(row);
    }
    j["form"] = rows;
    return j.dump();
}

ellipsoids::Ellipsoid parse_ellipsoid_json(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    if (!j.contains("dim") || !j.contains("form"))
        throw input_error("ellipsoid JSON needs dim and form");
    int dim = j["dim"].get<int>();
    auto rows = j["form"].get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != dim) throw input_error("form row count mismatch");
    std::vector<double> form;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim) throw input_error("form column count mismatch");
        form.insert(form.end(), row.begin(), row.end());
    }
    return ellipsoids::make_ellipsoid(dim, std::move(form));
}

std::string complex_polytope_json(const zerofan::ComplexPolytope& p) {
    json j;
    j["n"] = p.n;
    j["vertices"] = p.body.vertices();
    return j.dump();
}

zerofan::ComplexPolytope parse_complex_polytope_json(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    if (!j.contains("n") || !j.contains("vertices"))
        throw input_error("complex polytope JSON needs n and vertices");
    return zerofan::make_complex_polytope(j["n"].get<int>(),
                                          j["vertices"].get<std::vector<std::vector<double>>>());
}

std::string estimate_json(const ellipsoids::Estimate& e) {
    json j;
    j["mean"] = e.mean;
    j["stderr"] = e.stderr_;
    j["n_samples"] = e.n_samples;
    j["seed"] = e.seed;
    return j.dump();
}

std::string kac_report_json(const kac::KacReport& r) {
    json j;
    j["expected_real_roots"] = r.expected_real_roots;
    j["total_roots"] = r.total_roots;
    j["prob_real"] = r.prob_real;
    j["stderr"] = r.stderr_;
    j["seed"] = r.seed;
    j["spectra_hashes"] = r.spectra_hashes;
    return j.dump();
}

std::string disk_report_json(const expsum::DiskCountReport& r) {
    json j;
    j["r"] = r.r;
    j["count"] = r.count;
    j["predicted"] = r.predicted;
    j["contour_points"] = r.contour_points;
    j["r_used"] = r.r_used;
    j["nudges"] = r.nudges;
    return j.dump();
}

std::string counts_csv(const std::vector<int>& counts) {
    std::ostringstream out;
    out << "sample_index,root_count\n";
    for (size_t i = 0; i < counts.size(); ++i) out << i << "," << counts[i] << "\n";
    return out.str();
}

} // namespace kacfta::io

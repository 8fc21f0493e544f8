// Batch front end: every library operation behind a sub-command with seeded
// reproducibility and machine-readable JSON/CSV output.

#include "kacfta/errors.hpp"
#include "kacfta/io.hpp"
#include "kacfta/kac.hpp"
#include "kacfta/mc_lab.hpp"
#include "kacfta/zerofan.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace kacfta;
using json = nlohmann::ordered_json;

// --spectrum accepts "a..b" (1-d interval), "a..b^k" (k-fold product grid),
// "ball:n:m", "set:v1,v2,..." (explicit 1-d frequencies), or a path to a
// spectrum file.
spectra::Spectrum parse_spectrum_arg(const std::string& text) {
    auto range_of = [](const std::string& s, std::int64_t& a, std::int64_t& b) {
        auto dots = s.find("..");
        if (dots == std::string::npos) return false;
        try {
            size_t used = 0;
            a = std::stoll(s.substr(0, dots), &used);
            if (used != dots) return false;
            std::string rest = s.substr(dots + 2);
            b = std::stoll(rest, &used);
            return used == rest.size();
        } catch (...) {
            return false;
        }
    };
    if (text.rfind("ball:", 0) == 0) {
        auto rest = text.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw input_error("ball spectrum syntax is ball:<n>:<m>");
        return spectra::ball_spectrum(std::stoi(rest.substr(0, colon)),
                                      std::stod(rest.substr(colon + 1)));
    }
    if (text.rfind("set:", 0) == 0) {
        std::vector<spectra::LatticePoint> pts;
        std::stringstream ss(text.substr(4));
        std::string tok;
        while (std::getline(ss, tok, ',')) pts.push_back({std::stoll(tok)});
        return spectra::make_spectrum(pts);
    }
    std::string head = text;
    int power = 1;
    if (auto caret = text.find('^'); caret != std::string::npos) {
        head = text.substr(0, caret);
        power = std::stoi(text.substr(caret + 1));
        if (power < 1 || power > 4) throw input_error("grid power must be 1..4");
    }
    std::int64_t a, b;
    if (range_of(head, a, b)) {
        if (a > b) throw input_error("empty range in spectrum argument");
        std::vector<spectra::LatticePoint> pts;
        spectra::LatticePoint cur(power, a);
        while (true) {
            pts.push_back(cur);
            int i = 0;
            while (i < power && cur[i] == b) cur[i++] = a;
            if (i == power) break;
            ++cur[i];
        }
        return spectra::make_spectrum(pts);
    }
    return io::read_spectrum_file(text);
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --body accepts "ball:n:r" or a polytope JSON file.
ellipsoids::Body parse_body_arg(const std::string& text) {
    if (text.rfind("ball:", 0) == 0) {
        auto rest = text.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw input_error("ball body syntax is ball:<n>:<r>");
        return ellipsoids::Ball{std::stoi(rest.substr(0, colon)),
                                std::stod(rest.substr(colon + 1))};
    }
    return io::parse_polytope_json(slurp_file(text));
}

void emit(const std::string& output, const std::string& payload) {
    if (output.empty() || output == "-") {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + output);
    out << payload;
}

std::vector<double> parse_radii(const std::string& text) {
    std::vector<double> radii;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) radii.push_back(std::stod(tok));
    return radii;
}

struct Options {
    std::vector<std::string> spectra;
    std::vector<std::string> bodies;
    std::string file;
    std::string output;
    std::string format = "json";
    std::string radii = "10,20,30,40,50";
    std::uint64_t seed = 0;
    std::size_t samples = 100000;
    std::size_t trials = 200;
    int threads = 1;
    int max_n = 20;
    int n = 1;
    double r = 1.0;
};

ellipsoids::McParams mc_params(const Options& o) { return {o.samples, o.seed, o.threads}; }

std::vector<spectra::Spectrum> spectra_args(const Options& o) {
    std::vector<spectra::Spectrum> out;
    for (const auto& s : o.spectra) out.push_back(parse_spectrum_arg(s));
    if (out.empty()) throw input_error("at least one --spectrum is required");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Root statistics of random Laurent polynomials and zero densities of "
                 "exponential sums"};
    app.require_subcommand(1);

    Options o;
    if (const char* env = std::getenv("KACFTA_SEED")) o.seed = std::strtoull(env, nullptr, 10);

    auto add_common = [&](CLI::App* cmd, bool with_mc) {
        cmd->add_option("--output,-o", o.output, "write the artifact to this path (default stdout)");
        cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        if (with_mc) {
            cmd->add_option("--seed", o.seed, "random seed (default 0; env KACFTA_SEED)");
            cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
            cmd->add_option("--threads", o.threads, "worker cap; results do not depend on it");
        }
    };

    auto* c_er1 = app.add_subcommand(
        "expected-roots-1d",
        "Expected real-root count of a random trigonometric polynomial (one-variable "
        "Kac-type closed form)");
    c_er1->add_option("--spectrum", o.spectra)->required();
    add_common(c_er1, false);

    auto* c_prob = app.add_subcommand(
        "prob-real", "Probability that a root is real: ellipsoid mixed volume over "
                     "Newton-polytope mixed volume (Kac-type / BKK ratio)");
    c_prob->add_option("--spectrum", o.spectra)->required();
    add_common(c_prob, true);

    auto* c_er = app.add_subcommand(
        "expected-roots", "Expected real roots of a random system: n! times the mixed volume "
                          "of the Newton ellipsoids");
    c_er->add_option("--spectrum", o.spectra)->required();
    add_common(c_er, true);

    auto* c_bkk = app.add_subcommand(
        "bkk", "Generic torus root count: n! times the mixed volume of the Newton polytopes "
               "(Bernstein-Kushnirenko-Khovanskii)");
    c_bkk->add_option("--spectrum", o.spectra)->required();
    add_common(c_bkk, false);

    auto* c_beta = app.add_subcommand(
        "beta-table", "Moment constants: integral over [-1,1] of x^2 (1-x^2)^((n-1)/2), exact "
                      "rational or rational multiple of pi");
    c_beta->add_option("--max-n", o.max_n, "table rows 1..max-n (exact through 20)");
    add_common(c_beta, false);

    auto* c_ab = app.add_subcommand(
        "asymptote-ball", "Limit real-root fraction for spectra filling expanding balls");
    c_ab->add_option("--n", o.n, "dimension")->required();
    add_common(c_ab, false);

    auto* c_abod = app.add_subcommand(
        "asymptote-bodies",
        "Limit real-root fraction for spectra filling dilates of given bodies");
    c_abod->add_option("--body", o.bodies, "ball:<n>:<r> or polytope JSON file")->required();
    add_common(c_abod, true);

    auto* c_mc1 = app.add_subcommand(
        "mc-1d", "Monte Carlo verification of the one-variable expected real-root count");
    c_mc1->add_option("--spectrum", o.spectra)->required();
    add_common(c_mc1, true);

    auto* c_mc2 = app.add_subcommand(
        "mc-2d", "Monte Carlo verification of the two-variable expected real-root count");
    c_mc2->add_option("--spectrum", o.spectra, "two spectra (repeat the option)")->required();
    add_common(c_mc2, true);

    auto* c_id = app.add_subcommand(
        "identities", "Evaluation-map identities: |Theta|^2 = #spectrum and |Theta'|^2 = sum "
                      "of squared frequencies");
    c_id->add_option("--spectrum", o.spectra)->required();
    c_id->add_option("--trials", o.trials, "random torus points");
    c_id->add_option("--seed", o.seed, "random seed");
    add_common(c_id, false);

    auto* c_cr = app.add_subcommand(
        "crofton", "Crofton comparison: mean hyperplane crossings vs curve length over pi");
    c_cr->add_option("--spectrum", o.spectra)->required();
    add_common(c_cr, true);

    auto* c_ec = app.add_subcommand(
        "expsum-count", "Zeros of an exponential sum in a disk by the argument principle");
    c_ec->add_option("--file", o.file, "exponential sum text file")->required();
    c_ec->add_option("--r", o.r, "disk radius")->required();
    add_common(c_ec, false);

    auto* c_es = app.add_subcommand(
        "expsum-slope", "Zero-count slope over radii vs the Newton polygon perimeter over 2 pi");
    c_es->add_option("--file", o.file)->required();
    c_es->add_option("--radii", o.radii, "comma-separated increasing radii");
    add_common(c_es, false);

    auto* c_rd = app.add_subcommand(
        "ray-density", "Linear zero densities along the outward normals of the Newton polygon");
    c_rd->add_option("--file", o.file)->required();
    add_common(c_rd, false);

    auto* c_pv = app.add_subcommand(
        "pvol", "Pseudovolume of a polytope in complex space (face sum over the dual fan)");
    c_pv->add_option("--file", o.file, "complex polytope JSON file")->required();
    add_common(c_pv, false);

    auto* c_mv = app.add_subcommand("mixed-volume",
                                    "Mixed volume of polytopes by inclusion-exclusion");
    c_mv->add_option("--polytope", o.bodies, "polytope JSON files (repeat)")->required();
    add_common(c_mv, false);

    auto* c_el = app.add_subcommand(
        "ellipsoid", "Newton ellipsoid of a spectrum, or second-moment ellipsoid of a body");
    c_el->add_option("--spectrum", o.spectra);
    c_el->add_option("--body", o.bodies, "ball:<n>:<r> or polytope JSON file");
    add_common(c_el, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_er1->parsed()) {
            auto s = spectra_args(o);
            json j;
            j["expected_real_roots"] = kac::expected_real_roots_1d(s.at(0));
            emit(o.output, j.dump());
        } else if (c_prob->parsed()) {
            emit(o.output, io::kac_report_json(kac::prob_real(spectra_args(o), mc_params(o))));
        } else if (c_er->parsed()) {
            emit(o.output,
                 io::estimate_json(kac::expected_real_roots(spectra_args(o), mc_params(o))));
        } else if (c_bkk->parsed()) {
            json j;
            j["bkk_count"] = kac::bkk_count(spectra_args(o));
            emit(o.output, j.dump());
        } else if (c_beta->parsed()) {
            if (o.format == "csv") {
                std::ostringstream csv;
                csv << "n,exact,value\n";
                for (int n = 1; n <= o.max_n; ++n)
                    csv << n << "," << (n <= 20 ? kac::beta_exact(n).to_string() : "") << ","
                        << io::format_number(kac::beta_n(n)) << "\n";
                emit(o.output, csv.str());
            } else {
                json rows = json::array();
                for (int n = 1; n <= o.max_n; ++n) {
                    json row;
                    row["n"] = n;
                    if (n <= 20) row["exact"] = kac::beta_exact(n).to_string();
                    row["value"] = kac::beta_n(n);
                    rows.push_back(row);
                }
                emit(o.output, rows.dump());
            }
        } else if (c_ab->parsed()) {
            json j;
            j["limit"] = kac::asymptotic_prob_ball(o.n);
            emit(o.output, j.dump());
        } else if (c_abod->parsed()) {
            std::vector<ellipsoids::Body> bodies;
            for (const auto& b : o.bodies) bodies.push_back(parse_body_arg(b));
            json j;
            j["limit"] = kac::asymptotic_prob_bodies(bodies, mc_params(o));
            emit(o.output, j.dump());
        } else if (c_mc1->parsed()) {
            auto s = spectra_args(o);
            std::vector<int> counts;
            auto est = mc::estimate_expected_roots_1d(s.at(0), o.samples, o.seed, &counts);
            emit(o.output, o.format == "csv" ? io::counts_csv(counts) : io::estimate_json(est));
        } else if (c_mc2->parsed()) {
            auto s = spectra_args(o);
            if (s.size() != 2) throw input_error("mc-2d needs exactly two --spectrum");
            auto est = mc::estimate_expected_roots_2d(s[0], s[1], o.samples, o.seed);
            if (o.format == "csv") {
                emit(o.output, io::counts_csv(est.counts));
            } else {
                json j = json::parse(io::estimate_json(est.estimate));
                j["redraws"] = est.redraws;
                emit(o.output, j.dump());
            }
        } else if (c_id->parsed()) {
            auto s = spectra_args(o);
            auto rep = mc::evaluation_identities(s.at(0), static_cast<int>(o.trials), o.seed);
            json j;
            j["norm_residual"] = rep.norm_residual;
            j["deriv_residual"] = rep.deriv_residual;
            emit(o.output, j.dump());
        } else if (c_cr->parsed()) {
            auto s = spectra_args(o);
            auto est = mc::crofton_check(s.at(0), o.samples, o.seed);
            auto len = mc::curve_length_check(s.at(0));
            json j = json::parse(io::estimate_json(est));
            j["length_over_pi"] = len.closed_form / std::numbers::pi;
            emit(o.output, j.dump());
        } else if (c_ec->parsed()) {
            auto f = io::read_expsum_file(o.file);
            emit(o.output, io::disk_report_json(expsum::count_zeros_disk(f, o.r)));
        } else if (c_es->parsed()) {
            auto f = io::read_expsum_file(o.file);
            auto rep = expsum::density_slope(f, parse_radii(o.radii));
            if (o.format == "csv") {
                std::ostringstream csv;
                csv << "r,count,predicted\n";
                for (const auto& c : rep.counts)
                    csv << io::format_number(c.r) << "," << c.count << ","
                        << io::format_number(c.predicted) << "\n";
                emit(o.output, csv.str());
            } else {
                json j;
                j["slope"] = rep.slope;
                j["intercept"] = rep.intercept;
                j["max_residual"] = rep.max_residual;
                json counts = json::array();
                for (const auto& c : rep.counts)
                    counts.push_back(json::parse(io::disk_report_json(c)));
                j["counts"] = counts;
                emit(o.output, j.dump());
            }
        } else if (c_rd->parsed()) {
            auto f = io::read_expsum_file(o.file);
            json rays = json::array();
            for (const auto& r : zerofan::ray_density_1d(f)) {
                json jr;
                jr["direction"] = r.direction;
                jr["density"] = r.density;
                rays.push_back(jr);
            }
            emit(o.output, rays.dump());
        } else if (c_pv->parsed()) {
            auto p = io::parse_complex_polytope_json(slurp_file(o.file));
            double pv = zerofan::pseudovolume(p);
            auto faces = zerofan::enumerate_n_faces(p);
            if (o.output.empty() || o.output == "-") {
                std::cout << io::format_number(pv) << "\n";
                std::cout << "face\tcosine\tn_volume\tcone_measure\n";
                for (size_t i = 0; i < faces.size(); ++i)
                    std::cout << i << "\t" << io::format_number(faces[i].cosine) << "\t"
                              << io::format_number(faces[i].n_volume) << "\t"
                              << io::format_number(faces[i].cone_measure) << "\n";
            } else {
                json j;
                j["pseudovolume"] = pv;
                json jf = json::array();
                for (size_t i = 0; i < faces.size(); ++i) {
                    json row;
                    row["face"] = i;
                    row["cosine"] = faces[i].cosine;
                    row["n_volume"] = faces[i].n_volume;
                    row["cone_measure"] = faces[i].cone_measure;
                    jf.push_back(row);
                }
                j["faces"] = jf;
                emit(o.output, j.dump());
            }
        } else if (c_mv->parsed()) {
            std::vector<convex::Polytope> ps;
            for (const auto& b : o.bodies) ps.push_back(io::parse_polytope_json(slurp_file(b)));
            json j;
            j["mixed_volume"] = convex::mixed_volume(ps);
            emit(o.output, j.dump());
        } else if (c_el->parsed()) {
            if (!o.spectra.empty()) {
                emit(o.output, io::ellipsoid_json(
                                   ellipsoids::newton_ellipsoid(parse_spectrum_arg(o.spectra[0]))));
            } else if (!o.bodies.empty()) {
                auto be = ellipsoids::body_ellipsoid(parse_body_arg(o.bodies[0]), mc_params(o));
                json j = json::parse(io::ellipsoid_json(be.ellipsoid));
                j["stderr"] = be.stderr_max;
                j["exact"] = be.exact;
                emit(o.output, j.dump());
            } else {
                throw input_error("ellipsoid needs --spectrum or --body");
            }
        }
    } catch (const input_error& e) {
        json err;
        err["error"] = "input";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        json err;
        err["error"] = "numeric";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "input";
        err["message"] = e.what();
        std::cerr << err.dump() << "\n";
        return 2;
    }
    return 0;
}

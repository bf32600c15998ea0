// gme: two-mode Gaussian states, logarithmic negativity, and extremal
// entanglement over number-conserving mode redefinitions.

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gme/covariance.hpp"
#include "gme/entanglement.hpp"
#include "gme/errors.hpp"
#include "gme/io.hpp"
#include "gme/sampling.hpp"
#include "gme/search.hpp"
#include "gme/transforms.hpp"

namespace {

// Stable, documented exit codes (also listed in README and --help).
constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_parse = 3;
constexpr int exit_not_physical = 4;
constexpr int exit_budget = 5;
constexpr int exit_io = 6;

struct CommonOptions {
    double tol = gme::default_physicality_tol;
    std::vector<int> grid{9, 8, 8, 8};
    long budget = 20000;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--tol", opt.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--grid", opt.grid, "search grid counts theta,phi,phi1,phi2")
        ->delimiter(',')
        ->expected(4);
    cmd->add_option("--budget", opt.budget, "evaluation budget per extremal search")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "random seed");
}

gme::SearchOptions search_options(const CommonOptions& opt) {
    gme::SearchOptions s;
    s.grid = {opt.grid[0], opt.grid[1], opt.grid[2], opt.grid[3]};
    s.budget = opt.budget;
    s.seed = opt.seed;
    return s;
}

nlohmann::ordered_json chart_to_json(const gme::U2Chart& c) {
    return {{"theta", c.theta}, {"phi", c.phi}, {"phi1", c.phi1}, {"phi2", c.phi2}};
}

std::string chart_to_text(const gme::U2Chart& c) {
    std::ostringstream os;
    os << "(theta=" << c.theta << ", phi=" << c.phi << ", phi1=" << c.phi1
       << ", phi2=" << c.phi2 << ")";
    return os.str();
}

int run_tms(double r, const std::string& out, const std::string& label) {
    const gme::CovarianceMatrix v = gme::pure_tms(r);
    std::ostringstream default_label;
    default_label << "tms r=" << r;
    gme::write_matrix_file(out, v.matrix(), label.empty() ? default_label.str() : label);
    std::cout << "wrote " << out << "\n";
    return exit_ok;
}

int run_analyze(const std::string& in, const std::string& out, const CommonOptions& common) {
    const gme::MatrixFile file = gme::read_matrix_file(in);
    const gme::CovarianceMatrix& v = file.matrix;
    if (!gme::is_physical(v, common.tol)) {
        std::cerr << "error: state is not physical (V >= (i/2) sigma fails)\n";
        return exit_not_physical;
    }

    const gme::SymplecticSpectrum spec = gme::symplectic_spectrum(v, common.tol);
    const gme::NegativityResult neg = gme::log_negativity(v);
    const bool pure = gme::is_pure(v);
    const gme::StandardFormResult sf = gme::standard_form(v, common.tol);
    const gme::Classification cls = gme::classify(v, gme::default_abs_sep_tol, search_options(common));

    std::cout << "state: " << in;
    if (!file.label.empty()) std::cout << " (" << file.label << ")";
    std::cout << "\n";
    std::cout << "symplectic spectrum:     nu+ = " << spec.nu_plus << "  nu- = " << spec.nu_minus << "\n";
    std::cout << "PT symplectic spectrum:  nu+ = " << neg.pt_spectrum.nu_plus
              << "  nu- = " << neg.pt_spectrum.nu_minus << "\n";
    std::cout << "log-negativity E_N:      " << neg.log_negativity << " bits\n";
    std::cout << "pure:                    " << (pure ? "yes" : "no") << "\n";
    std::cout << "standard form:           a = " << sf.params.a << "  b = " << sf.params.b
              << "  c+ = " << sf.params.c_plus << "  c- = " << sf.params.c_minus << "\n";
    std::cout << "E+ (sup over charts):    " << cls.e_plus << " bits at " << chart_to_text(cls.max_chart) << "\n";
    std::cout << "E- (inf over charts):    " << cls.e_minus << " bits at " << chart_to_text(cls.min_chart) << "\n";
    std::cout << "classification:          " << gme::to_string(cls.verdict) << "\n";
    if (!cls.converged) {
        std::cout << "warning: extremal search did not converge within budget\n";
    }

    if (!out.empty()) {
        nlohmann::ordered_json j;
        j["input"] = in;
        if (!file.label.empty()) j["label"] = file.label;
        j["symplectic_spectrum"] = {{"nu_plus", spec.nu_plus}, {"nu_minus", spec.nu_minus}};
        j["pt_spectrum"] = {{"nu_plus", neg.pt_spectrum.nu_plus}, {"nu_minus", neg.pt_spectrum.nu_minus}};
        j["log_negativity"] = neg.log_negativity;
        j["pure"] = pure;
        j["standard_form"] = {{"a", sf.params.a},
                              {"b", sf.params.b},
                              {"c_plus", sf.params.c_plus},
                              {"c_minus", sf.params.c_minus}};
        j["e_plus"] = cls.e_plus;
        j["e_minus"] = cls.e_minus;
        j["max_chart"] = chart_to_json(cls.max_chart);
        j["min_chart"] = chart_to_json(cls.min_chart);
        j["classification"] = gme::to_string(cls.verdict);
        j["converged"] = cls.converged;
        j["config"] = {{"tol", common.tol},
                       {"grid", common.grid},
                       {"budget", common.budget},
                       {"seed", common.seed}};
        gme::write_atomic(out, j.dump(2) + "\n");
    }
    return cls.converged ? exit_ok : exit_budget;
}

int run_sweep(const std::string& in, const std::string& axis, int steps, double lo, double hi,
              bool lo_set, bool hi_set, const gme::U2Chart& fixed, const std::string& out) {
    const gme::MatrixFile file = gme::read_matrix_file(in);
    if (!gme::is_physical(file.matrix)) {
        std::cerr << "error: state is not physical\n";
        return exit_not_physical;
    }

    gme::SweepSpec spec;
    spec.steps = steps;
    spec.fixed = fixed;
    if (axis == "theta") {
        spec.axis = gme::SweepAxis::theta;
        spec.lo = 0.0;
        spec.hi = gme::half_pi;
    } else {
        spec.axis = axis == "phi" ? gme::SweepAxis::phi
                                  : (axis == "phi1" ? gme::SweepAxis::phi1 : gme::SweepAxis::phi2);
        spec.lo = 0.0;
        spec.hi = gme::two_pi;
    }
    if (lo_set) spec.lo = lo;
    if (hi_set) spec.hi = hi;

    const auto points = gme::sweep(file.matrix, spec);

    std::ostringstream csv;
    csv << "# gme sweep axis=" << axis << " steps=" << steps << " lo=" << gme::format_sig12(spec.lo)
        << " hi=" << gme::format_sig12(spec.hi) << " theta=" << gme::format_sig12(fixed.theta)
        << " phi=" << gme::format_sig12(fixed.phi) << " phi1=" << gme::format_sig12(fixed.phi1)
        << " phi2=" << gme::format_sig12(fixed.phi2) << "\n";
    csv << "angle,log_negativity\n";
    for (const auto& p : points) {
        csv << gme::format_sig12(p.angle) << "," << gme::format_sig12(p.log_negativity) << "\n";
    }
    gme::write_atomic(out, csv.str());
    std::cout << "wrote " << out << " (" << points.size() << " rows)\n";
    return exit_ok;
}

int run_surface(double r, double eta_lo, double eta_hi, int eta_steps, int theta_steps,
                const std::string& out) {
    const gme::StandardFormParams params{std::cosh(2.0 * r) / 2.0, std::cosh(2.0 * r) / 2.0,
                                         std::sinh(2.0 * r) / 2.0, -std::sinh(2.0 * r) / 2.0};
    std::vector<double> etas(eta_steps);
    for (int i = 0; i < eta_steps; ++i) {
        etas[i] = eta_lo + (eta_hi - eta_lo) * i / (eta_steps - 1);
    }
    std::vector<double> thetas(theta_steps);
    for (int i = 0; i < theta_steps; ++i) {
        thetas[i] = gme::half_pi * i / (theta_steps - 1);
    }
    const auto rows = gme::surface(params, etas, thetas);

    std::ostringstream csv;
    csv << "# gme surface r=" << gme::format_sig12(r) << " eta-lo=" << gme::format_sig12(eta_lo)
        << " eta-hi=" << gme::format_sig12(eta_hi) << " eta-steps=" << eta_steps
        << " theta-steps=" << theta_steps << "\n";
    csv << "eta,theta,log_negativity\n";
    for (std::size_t i = 0; i < etas.size(); ++i) {
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            csv << gme::format_sig12(etas[i]) << "," << gme::format_sig12(thetas[j]) << ","
                << gme::format_sig12(rows[i][j]) << "\n";
        }
    }
    gme::write_atomic(out, csv.str());
    std::cout << "wrote " << out << " (" << etas.size() * thetas.size() << " rows)\n";
    return exit_ok;
}

int run_census(const std::string& mode, long n, const gme::SampleRanges& ranges, bool via_t,
               double abs_sep_tol, unsigned threads, const CommonOptions& common,
               const std::string& out) {
    gme::CensusConfig cfg;
    cfg.mode = mode == "standard" ? gme::SampleMode::standard : gme::SampleMode::generic;
    cfg.n_physical = n;
    cfg.ranges = ranges;
    cfg.seed = common.seed;
    cfg.search = search_options(common);
    cfg.tol = abs_sep_tol;
    cfg.generic_via_t = via_t;
    cfg.threads = threads;

    const gme::CensusReport report = gme::census(cfg);

    nlohmann::ordered_json j;
    j["mode"] = gme::to_string(report.mode);
    j["generated"] = report.generated;
    j["physical"] = report.physical;
    j["abs_separable"] = report.abs_separable;
    j["fraction"] = report.fraction;
    j["seed"] = report.seed;
    j["config"] = {{"n", n},
                   {"diag_lo", ranges.diag_lo},
                   {"diag_hi", ranges.diag_hi},
                   {"offdiag_lo", ranges.offdiag_lo},
                   {"offdiag_hi", ranges.offdiag_hi},
                   {"generic_via_T", via_t},
                   {"abs_sep_tol", abs_sep_tol},
                   {"tol", common.tol},
                   {"grid", common.grid},
                   {"budget", common.budget}};
    const std::string text = j.dump(2) + "\n";
    if (!out.empty()) {
        gme::write_atomic(out, text);
        std::cout << "wrote " << out << "\n";
    }
    std::cout << "mode=" << gme::to_string(report.mode) << " physical=" << report.physical
              << " generated=" << report.generated << " abs_separable=" << report.abs_separable
              << " fraction=" << report.fraction << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gme: entanglement of two-mode bosonic Gaussian states under number-conserving\n"
        "mode redefinitions (covariance-matrix representation).\n"
        "Exit codes: 0 ok, 2 usage, 3 parse, 4 not-physical, 5 budget-exhausted, 6 io."};
    app.require_subcommand(1);

    // tms
    double tms_r = 0.0;
    std::string tms_out = "tms.json";
    std::string tms_label;
    CLI::App* tms = app.add_subcommand("tms", "write a two-mode squeezed state file");
    tms->add_option("--r", tms_r, "squeeze parameter r >= 0")
        ->required()
        ->check(CLI::NonNegativeNumber);
    tms->add_option("--out", tms_out, "output MatrixFile path");
    tms->add_option("--label", tms_label, "optional label stored in the file");

    // analyze
    std::string an_in;
    std::string an_out;
    CommonOptions an_common;
    CLI::App* analyze = app.add_subcommand("analyze", "full entanglement report for a state file");
    analyze->add_option("--in", an_in, "input MatrixFile path")->required();
    analyze->add_option("--out", an_out, "optional JSON report path");
    add_common(analyze, an_common);

    // sweep
    std::string sw_in;
    std::string sw_axis = "theta";
    int sw_steps = 181;
    double sw_lo = 0.0, sw_hi = 0.0;
    gme::U2Chart sw_fixed;
    std::string sw_out = "sweep.csv";
    CLI::App* sweep = app.add_subcommand("sweep", "E_N along one chart angle, CSV output");
    sweep->add_option("--in", sw_in, "input MatrixFile path")->required();
    sweep->add_option("--axis", sw_axis, "swept angle")
        ->check(CLI::IsMember({"theta", "phi", "phi1", "phi2"}));
    sweep->add_option("--steps", sw_steps, "grid points (>= 2)");
    CLI::Option* lo_opt = sweep->add_option("--lo", sw_lo, "sweep start (radians)");
    CLI::Option* hi_opt = sweep->add_option("--hi", sw_hi, "sweep end (radians)");
    sweep->add_option("--theta", sw_fixed.theta, "fixed theta (radians)");
    sweep->add_option("--phi", sw_fixed.phi, "fixed phi (radians)");
    sweep->add_option("--phi1", sw_fixed.phi1, "fixed phi' (radians)");
    sweep->add_option("--phi2", sw_fixed.phi2, "fixed phi'' (radians)");
    sweep->add_option("--out", sw_out, "output CSV path");

    // surface
    double su_r = 0.5;
    double su_eta_lo = 0.5, su_eta_hi = 2.0;
    int su_eta_steps = 7, su_theta_steps = 181;
    std::string su_out = "surface.csv";
    CLI::App* surface =
        app.add_subcommand("surface", "E_N over the (eta, theta) squeeze/mixer plane, CSV output");
    surface->add_option("--r", su_r, "TMS squeeze parameter r >= 0")
        ->required()
        ->check(CLI::NonNegativeNumber);
    surface->add_option("--eta-lo", su_eta_lo, "smallest squeeze factor")->check(CLI::PositiveNumber);
    surface->add_option("--eta-hi", su_eta_hi, "largest squeeze factor")->check(CLI::PositiveNumber);
    surface->add_option("--eta-steps", su_eta_steps, "eta grid points (>= 2)");
    surface->add_option("--theta-steps", su_theta_steps, "theta grid points (>= 2)");
    surface->add_option("--out", su_out, "output CSV path");

    // census
    std::string ce_mode = "standard";
    long ce_n = 1000;
    gme::SampleRanges ce_ranges;
    bool ce_via_t = false;
    double ce_tol = gme::default_abs_sep_tol;
    unsigned ce_threads = 0;
    std::string ce_out = "census.json";
    CommonOptions ce_common;
    CLI::App* census = app.add_subcommand("census", "random-state separability census, JSON report");
    census->add_option("--mode", ce_mode, "sampler: standard form or generic symmetric")
        ->check(CLI::IsMember({"standard", "generic"}));
    census->add_option("--n", ce_n, "number of accepted physical states")->check(CLI::PositiveNumber);
    census->add_option("--diag-lo", ce_ranges.diag_lo, "diagonal entry lower bound");
    census->add_option("--diag-hi", ce_ranges.diag_hi, "diagonal entry upper bound");
    census->add_option("--offdiag-lo", ce_ranges.offdiag_lo, "off-diagonal entry lower bound");
    census->add_option("--offdiag-hi", ce_ranges.offdiag_hi, "off-diagonal entry upper bound");
    census->add_flag("--generic-via-T", ce_via_t,
                     "generic mode: random local-symplectic images of standard-form draws");
    census->add_option("--abs-sep-tol", ce_tol, "absolute-separability threshold on E+ (bits)")
        ->check(CLI::PositiveNumber);
    census->add_option("--threads", ce_threads, "worker threads (0 = hardware)");
    census->add_option("--out", ce_out, "output JSON path");
    add_common(census, ce_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (tms->parsed()) return run_tms(tms_r, tms_out, tms_label);
        if (analyze->parsed()) return run_analyze(an_in, an_out, an_common);
        if (sweep->parsed()) {
            if (sw_steps < 2) {
                std::cerr << "error: --steps must be >= 2\n";
                return exit_usage;
            }
            return run_sweep(sw_in, sw_axis, sw_steps, sw_lo, sw_hi, lo_opt->count() > 0,
                             hi_opt->count() > 0, sw_fixed, sw_out);
        }
        if (surface->parsed()) {
            if (su_eta_steps < 2 || su_theta_steps < 2) {
                std::cerr << "error: grid steps must be >= 2\n";
                return exit_usage;
            }
            if (!(su_eta_lo < su_eta_hi)) {
                std::cerr << "error: eta range must satisfy lo < hi\n";
                return exit_usage;
            }
            return run_surface(su_r, su_eta_lo, su_eta_hi, su_eta_steps, su_theta_steps, su_out);
        }
        if (census->parsed()) {
            return run_census(ce_mode, ce_n, ce_ranges, ce_via_t, ce_tol, ce_threads, ce_common,
                              ce_out);
        }
    } catch (const gme::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const gme::NotPhysical& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_not_physical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return exit_io;
    } catch (const gme::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_usage;
}

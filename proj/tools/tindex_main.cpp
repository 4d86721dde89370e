// tindex: Fredholm indices of Toeplitz operators, phase portraits over
// symbol families, finite-section witnesses and quantum Hall staircase
// experiments, one subcommand each. JSON goes to stdout for single results;
// grids and curves are written as CSV files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tindex/errors.hpp"
#include "tindex/index.hpp"
#include "tindex/io.hpp"
#include "tindex/portrait.hpp"
#include "tindex/qhe.hpp"
#include "tindex/truncation.hpp"

using namespace tindex;
using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump() << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
        out << j.dump(2) << "\n";
    }
}

LaurentSymbol require_symbol(const std::string& coeffs_json) {
    LaurentSymbol s = symbol_from_string(coeffs_json);
    if (s.is_zero()) throw std::invalid_argument("zero symbol");
    return s;
}

std::pair<AxisRange, AxisRange> parse_window(const std::string& text, int res) {
    // "-3:3,-3:3"
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("window must be lo:hi,lo:hi");
    auto parse_range = [res](const std::string& part) {
        auto colon = part.find(':', 1); // allow a leading minus sign
        if (colon == std::string::npos)
            throw std::invalid_argument("window range must be lo:hi");
        AxisRange r;
        r.lo = std::stod(part.substr(0, colon));
        r.hi = std::stod(part.substr(colon + 1));
        r.res = res;
        if (!(r.lo < r.hi)) throw std::invalid_argument("window range must have lo < hi");
        return r;
    };
    return {parse_range(text.substr(0, comma)), parse_range(text.substr(comma + 1))};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for Fredholm indices of Toeplitz operators"};
    app.set_config("--config", "", "flat key=value config file; flags take precedence");
    app.allow_config_extras(false); // unknown config keys are rejected
    app.fallthrough();              // global flags remain valid after a subcommand name
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: available parallelism)")
        ->capture_default_str();
    app.require_subcommand(1);

    std::string coeffs, out_path;
    int grid = 1024;
    std::string method = "roots";
    auto* cmd_index = app.add_subcommand(
        "index", "Fredholm index of T_f by winding number or root counting");
    cmd_index->add_option("--coeffs", coeffs, "symbol as JSON {\"exp\": [re, im], ...}")
        ->required();
    cmd_index->add_option("--method", method, "oracle: roots or winding")
        ->check(CLI::IsMember({"roots", "winding"}))
        ->capture_default_str();
    cmd_index->add_option("--grid", grid, "starting grid for the winding oracle")
        ->capture_default_str();
    cmd_index->add_option("--out", out_path, "write JSON here instead of stdout");

    double band_tol = 1e-9;
    auto* cmd_roots = app.add_subcommand(
        "roots", "roots of z^m f(z) classified against the unit circle");
    cmd_roots->add_option("--coeffs", coeffs, "symbol as JSON")->required();
    cmd_roots->add_option("--band-tol", band_tol, "on-circle band tolerance")
        ->capture_default_str();
    cmd_roots->add_option("--out", out_path, "write JSON here instead of stdout");

    int trunc_n = 256;
    double sigma_tol = 1e-8;
    auto* cmd_trunc = app.add_subcommand(
        "truncate", "finite-section singular-value signature of the index");
    cmd_trunc->add_option("--coeffs", coeffs, "symbol as JSON")->required();
    cmd_trunc->add_option("--N", trunc_n, "section size")->capture_default_str();
    cmd_trunc->add_option("--sigma-tol", sigma_tol, "near-kernel threshold")
        ->capture_default_str();
    cmd_trunc->add_option("--out", out_path, "write JSON here instead of stdout");

    std::string family = "quadratic-real", window = "-3:3,-3:3";
    int res = 401;
    auto* cmd_portrait = app.add_subcommand(
        "portrait", "index phase portrait of a two-parameter symbol family");
    cmd_portrait->add_option("--family", family, "family name (quadratic-real)")
        ->check(CLI::IsMember({"quadratic-real"}))
        ->capture_default_str();
    cmd_portrait->add_option("--window", window, "scan window lo:hi,lo:hi")
        ->capture_default_str();
    cmd_portrait->add_option("--res", res, "points per axis")->capture_default_str();
    cmd_portrait->add_option("--out", out_path, "CSV output path (sidecar: <out>.json)")
        ->required();

    std::string ensemble = "complex";
    int degree = 4;
    long paths = 500, steps = 200;
    uint64_t seed = 7;
    auto* cmd_jumps = app.add_subcommand(
        "jumps", "index-jump statistics along random paths of shift polynomials");
    cmd_jumps->add_option("--ensemble", ensemble, "coefficient field: complex or real")
        ->check(CLI::IsMember({"complex", "real"}))
        ->capture_default_str();
    cmd_jumps->add_option("--degree", degree, "polynomial degree n")->capture_default_str();
    cmd_jumps->add_option("--paths", paths, "number of random paths")->capture_default_str();
    cmd_jumps->add_option("--steps", steps, "uniform steps per path")->capture_default_str();
    cmd_jumps->add_option("--seed", seed, "ensemble seed")->capture_default_str();
    cmd_jumps->add_option("--out", out_path, "write JSON here instead of stdout");

    int ell = 2, big_n = 100;
    double delta = 0.5, eps = 1e-7;
    auto* cmd_wrap = app.add_subcommand(
        "wrap", "wrap-around winding gained by an eps e^{iN theta} perturbation "
                "of a symbol vanishing on an interval");
    cmd_wrap->add_option("--ell", ell, "smoothness class for the C^ell norm")
        ->capture_default_str();
    cmd_wrap->add_option("--delta", delta, "width of the vanishing interval")
        ->capture_default_str();
    cmd_wrap->add_option("--bigN", big_n, "oscillation count N")->capture_default_str();
    cmd_wrap->add_option("--eps", eps, "perturbation amplitude")->capture_default_str();
    cmd_wrap->add_option("--out", out_path, "write JSON here instead of stdout");

    auto* cmd_qhe = app.add_subcommand("qhe", "quantum Hall index experiments");
    cmd_qhe->require_subcommand(1);

    int mmax = 100;
    auto* cmd_landau = cmd_qhe->add_subcommand(
        "landau", "lowest-Landau-level weights of the vortex unitary in PUP");
    cmd_landau->add_option("--mmax", mmax, "largest level index")->capture_default_str();
    cmd_landau->add_option("--out", out_path, "CSV output path (default: stdout)");

    int lat_l = 24, k_power = 1, esteps = 200;
    std::string flux_text = "1/7", beta_text = "inf";
    double disorder = 0.0, emin = -4.0, emax = 0.0, window_frac = 0.30;
    uint64_t lat_seed = 1;
    auto* cmd_lattice = cmd_qhe->add_subcommand(
        "lattice", "Hall staircase: bulk trace of (P - UPU*)^(2k+1) over an energy grid");
    cmd_lattice->add_option("--L", lat_l, "lattice side length")->capture_default_str();
    cmd_lattice->add_option("--flux", flux_text, "flux per plaquette, p/q")
        ->capture_default_str();
    cmd_lattice->add_option("--disorder", disorder, "diagonal disorder amplitude W")
        ->capture_default_str();
    cmd_lattice->add_option("--beta", beta_text,
                            "inverse temperature; inf selects the spectral projection")
        ->capture_default_str();
    cmd_lattice->add_option("--emin", emin, "energy grid start")->capture_default_str();
    cmd_lattice->add_option("--emax", emax, "energy grid end")->capture_default_str();
    cmd_lattice->add_option("--esteps", esteps, "energy grid points")->capture_default_str();
    cmd_lattice->add_option("--seed", lat_seed, "disorder seed")->capture_default_str();
    cmd_lattice->add_option("--k", k_power, "trace power parameter k")->capture_default_str();
    cmd_lattice->add_option("--window-frac", window_frac, "bulk trace window radius / L")
        ->capture_default_str();
    cmd_lattice->add_option("--out", out_path, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_index) {
            LaurentSymbol s = require_symbol(coeffs);
            IndexResult r = method == "roots" ? index_from_roots(s) : toeplitz_index(s, grid);
            emit(to_json(r), out_path);
        } else if (*cmd_roots) {
            LaurentSymbol s = require_symbol(coeffs);
            emit(to_json(laurent_roots(s, band_tol)), out_path);
        } else if (*cmd_trunc) {
            LaurentSymbol s = require_symbol(coeffs);
            emit(to_json(index_signature(s, trunc_n, sigma_tol), trunc_n), out_path);
        } else if (*cmd_portrait) {
            auto [ax0, ax1] = parse_window(window, res);
            auto fam = ParameterFamily::quadratic_real();
            auto grid_result = scan_grid(fam, ax0, ax1, threads);
            write_portrait_csv(grid_result, out_path);
        } else if (*cmd_jumps) {
            auto field = ensemble == "real" ? CoefficientField::real_coeffs
                                            : CoefficientField::complex_coeffs;
            emit(to_json(random_path_jump_scan(field, degree, paths, steps, seed, threads)),
                 out_path);
        } else if (*cmd_wrap) {
            emit(to_json(wraparound_experiment(ell, delta, big_n, eps), ell, delta, big_n, eps),
                 out_path);
        } else if (*cmd_landau) {
            auto lw = landau_pup_weights(mmax);
            if (out_path.empty())
                write_landau_csv(lw, std::cout);
            else
                write_landau_csv(lw, out_path);
        } else if (*cmd_lattice) {
            if (esteps < 1) throw std::invalid_argument("need at least one energy point");
            if (emax < emin) throw std::invalid_argument("emax must be >= emin");
            Flux flux = parse_flux(flux_text);
            ScanMode mode = ScanMode::spectral;
            double beta = 0.0;
            if (beta_text != "inf") {
                beta = std::stod(beta_text);
                mode = ScanMode::fermi;
            }
            auto model = build_lattice_model(lat_l, flux, disorder, lat_seed);
            auto sd = diagonalize(model);
            std::vector<double> egrid(static_cast<size_t>(esteps));
            for (int i = 0; i < esteps; ++i)
                egrid[static_cast<size_t>(i)] =
                    esteps == 1 ? emin : emin + (emax - emin) * i / (esteps - 1);
            auto curve = hall_step_scan(model, sd, egrid, mode, beta, k_power,
                                        TraceWindow{window_frac}, threads);
            write_step_curve_csv(curve, out_path);
        }
    } catch (const Error& e) {
        json diag{{"error", e.kind()}, {"message", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

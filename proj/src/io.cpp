#include "tindex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tindex {

using nlohmann::json;

LaurentSymbol symbol_from_json(const json& j) {
    const json* map = &j;
    if (j.is_object() && j.contains("coeffs")) map = &j.at("coeffs");
    if (!map->is_object())
        throw std::invalid_argument("symbol literal must be an object of exponent -> [re, im]");
    std::map<int, cplx> coeffs;
    for (auto it = map->begin(); it != map->end(); ++it) {
        int exponent = 0;
        try {
            size_t pos = 0;
            exponent = std::stoi(it.key(), &pos);
            if (pos != it.key().size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("symbol exponent keys must be integers, got '" +
                                        it.key() + "'");
        }
        const json& v = it.value();
        if (v.is_number()) {
            coeffs[exponent] = cplx(v.get<double>(), 0.0);
        } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            coeffs[exponent] = cplx(v[0].get<double>(), v[1].get<double>());
        } else {
            throw std::invalid_argument("coefficient values must be [re, im] pairs");
        }
    }
    return LaurentSymbol::from_map(coeffs);
}

LaurentSymbol symbol_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("bad symbol JSON: ") + e.what());
    }
    return symbol_from_json(j);
}

json symbol_to_json(const LaurentSymbol& s) {
    json coeffs = json::object();
    if (!s.is_zero())
        for (int k = s.lowest(); k <= s.highest(); ++k) {
            cplx c = s.coeff(k);
            if (c != cplx(0.0)) coeffs[std::to_string(k)] = {c.real(), c.imag()};
        }
    return json{{"coeffs", coeffs}};
}

json to_json(const IndexResult& r) {
    json j;
    j["status"] = r.is_fredholm ? "fredholm" : "not_fredholm";
    if (r.is_fredholm)
        j["index"] = r.index;
    else
        j["witness_theta"] = r.witness_theta;
    j["min_modulus"] = r.min_modulus;
    j["method"] = r.method == IndexMethod::roots ? "roots" : "winding";
    return j;
}

json to_json(const RootReport& r) {
    json roots = json::array();
    for (const cplx& z : r.roots) roots.push_back({z.real(), z.imag()});
    return json{{"roots", roots},
                {"pole_order", r.pole_order},
                {"inside", r.inside_count},
                {"on_circle", r.on_circle_count},
                {"outside", r.outside_count},
                {"band_tol", r.band_tol}};
}

json to_json(const IndexSignature& sig, int N) {
    return json{{"N", N},
                {"magnitude", sig.magnitude},
                {"sign", sig.sign},
                {"sigmas", sig.smallest_sigmas}};
}

json to_json(const JumpHistogram& h) {
    json counts = json::object();
    for (const auto& [size, count] : h.counts) counts[std::to_string(size)] = count;
    return json{{"ensemble", h.ensemble == CoefficientField::real_coeffs ? "real" : "complex"},
                {"degree", h.degree},
                {"counts", counts},
                {"unresolved", h.unresolved},
                {"paths", h.paths},
                {"steps", h.steps},
                {"seed", h.seed}};
}

json to_json(const WraparoundResult& w, int ell, double delta, int big_n, double eps) {
    json j{{"ell", ell},
           {"delta", delta},
           {"bigN", big_n},
           {"eps", eps},
           {"grid", w.grid},
           {"perturbation_cl_norm", w.perturbation_cl_norm},
           {"min_modulus", w.min_modulus}};
    if (w.is_fredholm) {
        j["status"] = "fredholm";
        j["winding_change"] = w.winding_change;
    } else {
        j["status"] = "not_fredholm";
    }
    return j;
}

Flux parse_flux(const std::string& text) {
    Flux f;
    size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            f.p = std::stoi(text);
            f.q = 1;
        } else {
            f.p = std::stoi(text.substr(0, slash));
            f.q = std::stoi(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("flux must be an integer or p/q fraction");
    }
    if (f.q <= 0) throw std::invalid_argument("flux denominator must be positive");
    return f;
}

namespace {

constexpr const char* kRootOracleVersion = "companion-roots/1";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_portrait_csv(const PortraitGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << grid.axis_labels[0] << "," << grid.axis_labels[1] << ",index\n";
    for (int i0 = 0; i0 < grid.axis0.res; ++i0)
        for (int i1 = 0; i1 < grid.axis1.res; ++i1) {
            int32_t c = grid.cell(i0, i1);
            out << format_double(grid.axis0.value(i0)) << ","
                << format_double(grid.axis1.value(i1)) << ",";
            if (c == kNotFredholmCell || c == kZeroSymbolCell)
                out << "NF";
            else
                out << c;
            out << "\n";
        }

    json side{{"family", grid.family_name},
              {"axes",
               {{{"label", grid.axis_labels[0]},
                 {"min", grid.axis0.lo},
                 {"max", grid.axis0.hi},
                 {"res", grid.axis0.res}},
                {{"label", grid.axis_labels[1]},
                 {"min", grid.axis1.lo},
                 {"max", grid.axis1.hi},
                 {"res", grid.axis1.res}}}},
              {"oracle", kRootOracleVersion},
              {"not_fredholm_code", "NF"}};
    std::ofstream sidecar(path + ".json");
    if (!sidecar) throw std::runtime_error("cannot open " + path + ".json for writing");
    sidecar << side.dump(2) << "\n";
}

void write_step_curve_csv(const StepCurve& curve, std::ostream& out) {
    out << "E,estimate,nearest_int,deviation,flags\n";
    for (size_t i = 0; i < curve.energies.size(); ++i) {
        double est = curve.estimates[i];
        long nearest = std::lround(est);
        out << format_double(curve.energies[i]) << "," << format_double(est) << "," << nearest
            << "," << format_double(std::abs(est - static_cast<double>(nearest))) << ","
            << curve.flags[i] << "\n";
    }
}

void write_step_curve_csv(const StepCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_step_curve_csv(curve, out);
}

void write_landau_csv(const LandauWeights& lw, std::ostream& out) {
    out << "m,w,asymptote,residual\n";
    for (int m = 0; m <= lw.m_max; ++m) {
        double w = lw.w[static_cast<size_t>(m)];
        out << m << "," << format_double(w) << ",";
        if (m >= 1) {
            double asym = 1.0 - 1.0 / (8.0 * m);
            out << format_double(asym) << "," << format_double(w - asym);
        } else {
            out << ",";
        }
        out << "\n";
    }
}

void write_landau_csv(const LandauWeights& lw, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_landau_csv(lw, out);
}

} // namespace tindex

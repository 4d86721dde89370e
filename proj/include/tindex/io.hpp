#pragma once

#include <string>

#include <json.hpp>

#include "tindex/index.hpp"
#include "tindex/portrait.hpp"
#include "tindex/qhe.hpp"
#include "tindex/truncation.hpp"

namespace tindex {

// Symbol literals: {"coeffs": {"-1": [re, im], "0": [...]}} with exponent
// keys. The bare coefficient map (no wrapper) is accepted too.
LaurentSymbol symbol_from_json(const nlohmann::json& j);
LaurentSymbol symbol_from_string(const std::string& text);
nlohmann::json symbol_to_json(const LaurentSymbol& s);

nlohmann::json to_json(const IndexResult& r);
nlohmann::json to_json(const RootReport& r);
nlohmann::json to_json(const IndexSignature& sig, int N);
nlohmann::json to_json(const JumpHistogram& h);
nlohmann::json to_json(const WraparoundResult& w, int ell, double delta, int big_n, double eps);

Flux parse_flux(const std::string& text); // "p/q" or integer

// portrait CSV: header "<axis0>,<axis1>,index", row-major, NF for sentinel
// cells. The sidecar JSON (path + ".json") records family, window,
// resolution and oracle version.
void write_portrait_csv(const PortraitGrid& grid, const std::string& path);

// CSV "E,estimate,nearest_int,deviation,flags"
void write_step_curve_csv(const StepCurve& curve, std::ostream& out);
void write_step_curve_csv(const StepCurve& curve, const std::string& path);

// CSV "m,w,asymptote,residual" with asymptote 1 - 1/(8m) for m >= 1
void write_landau_csv(const LandauWeights& lw, std::ostream& out);
void write_landau_csv(const LandauWeights& lw, const std::string& path);

} // namespace tindex

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tindex/index.hpp"
#include "tindex/symbol.hpp"

namespace tindex {

enum class CoefficientField { real_coeffs, complex_coeffs };

// Affine family of symbols base + sum t_j * direction_j. Directions must be
// linearly independent as coefficient vectors.
struct ParameterFamily {
    LaurentSymbol base;
    std::vector<LaurentSymbol> directions;
    std::vector<std::string> axis_labels;
    CoefficientField field = CoefficientField::real_coeffs;
    std::string name;

    static ParameterFamily make(LaurentSymbol base, std::vector<LaurentSymbol> directions,
                                std::vector<std::string> labels, CoefficientField field,
                                std::string name);

    // A = a^2 + c1 a + c0 in symbol form; axes (c1, c0).
    static ParameterFamily quadratic_real();

    LaurentSymbol at(const std::vector<double>& t) const;
};

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    int res = 0;
    double value(int i) const { return res < 2 ? lo : lo + (hi - lo) * i / (res - 1); }
    double step() const { return res < 2 ? 0.0 : (hi - lo) / (res - 1); }
};

// Compact per-cell codes: the index, or one of the sentinels below.
inline constexpr int32_t kNotFredholmCell = INT32_MIN;
inline constexpr int32_t kZeroSymbolCell = INT32_MIN + 1;

struct PortraitGrid {
    AxisRange axis0; // outer (first CSV column)
    AxisRange axis1; // inner
    std::vector<std::string> axis_labels{"t0", "t1"};
    std::string family_name;
    std::vector<int32_t> cells; // row-major: i0 * axis1.res + i1

    int32_t cell(int i0, int i1) const { return cells[static_cast<size_t>(i0) * axis1.res + i1]; }
};

// Root-oracle scan over a 2-D window; deterministic and cell-parallel.
PortraitGrid scan_grid(const ParameterFamily& fam, AxisRange axis0, AxisRange axis1,
                       int threads = 0);

struct BoundaryEdge {
    int i0, j0; // cell A
    int i1, j1; // cell B (grid neighbor)
    int jump;   // |index difference|
};

struct BoundaryReport {
    std::vector<BoundaryEdge> edges;
    long not_fredholm_adjacencies = 0; // edges touching a sentinel cell
};

BoundaryReport extract_boundaries(const PortraitGrid& grid);

// Jump statistics along random straight paths through a degree-n shift
// polynomial family with Gaussian endpoints.
struct JumpHistogram {
    CoefficientField ensemble = CoefficientField::complex_coeffs;
    int degree = 0;
    std::map<int, long> counts;
    long paths = 0;
    long steps = 0;
    uint64_t seed = 0;
    long unresolved = 0;
    long total() const;
};

JumpHistogram random_path_jump_scan(CoefficientField ensemble, int degree, long paths,
                                    long steps, uint64_t seed, int threads = 0);

// C^ell wrap-around construction: a smooth symbol vanishing on a width-delta
// interval, perturbed by eps e^{i N theta}. Reports the winding gained over
// the N = 0 reference and the C^ell size of the perturbation.
struct WraparoundResult {
    bool is_fredholm = false; // false when the winding is undefined
    int winding_change = 0;
    double perturbation_cl_norm = 0.0;
    int grid = 0;
    double min_modulus = 0.0;
};

WraparoundResult wraparound_experiment(int ell, double delta, int big_n, double eps);

} // namespace tindex

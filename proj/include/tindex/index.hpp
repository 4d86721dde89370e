#pragma once

#include <vector>

#include "tindex/symbol.hpp"

namespace tindex {

enum class IndexMethod { winding, roots };

// Outcome of a Fredholm classification. min_modulus is the smallest |f|
// observed on the evidence grid; for NotFredholm results witness_theta is an
// angle where the modulus test failed.
struct IndexResult {
    bool is_fredholm = false;
    int index = 0;
    double witness_theta = 0.0;
    double min_modulus = 0.0;
    IndexMethod method = IndexMethod::winding;

    static IndexResult fredholm(int idx, double min_mod, IndexMethod m);
    static IndexResult not_fredholm(double witness, double min_mod, IndexMethod m);
};

struct WindingOptions {
    double rel_tol = 1e-9;            // Fredholm modulus test, relative to max |f|
    double max_phase_step = M_PI / 2; // safety margin below the pi unwrap limit
    long max_grid = 1L << 20;         // adaptive refinement cap
};

// Branch-corrected phase accumulation around the circle; exact integer.
// Throws NotFredholmError when |f| dips below tolerance and
// GridTooCoarseError when no admissible grid exists under the cap.
int winding_number(const LaurentSymbol& s, int grid, const WindingOptions& opts = {});
// Sampled symbols wind on their own grid; no refinement is possible.
int winding_number(const SampledSymbol& s, const WindingOptions& opts = {});

// Index(T_f) = -Winding(f). Modulus failures land in the result status;
// grid failures still throw.
IndexResult toeplitz_index(const LaurentSymbol& s, int grid = 1024,
                           const WindingOptions& opts = {});
IndexResult toeplitz_index(const SampledSymbol& s, const WindingOptions& opts = {});

// Roots of z^m f(z) with m the pole order, classified against the unit
// circle with a band tolerance.
struct RootReport {
    std::vector<cplx> roots; // with multiplicity
    int pole_order = 0;
    int inside_count = 0;
    int on_circle_count = 0;
    int outside_count = 0;
    double band_tol = 0.0;
};

RootReport laurent_roots(const LaurentSymbol& s, double band_tol = 1e-9);

// Root-counting oracle: Fredholm(pole_order - inside_count) unless a root
// sits in the circle band. For symbols obtained through
// from_shift_polynomial this reproduces "index = roots of p inside".
IndexResult index_from_roots(const LaurentSymbol& s, double band_tol = 1e-9);

enum class Symmetry { complex_coeffs, real_coeffs };

// Codimension of the stratum where the index jumps by k: k without
// symmetry, floor((k+1)/2) under a reality constraint.
int expected_jump_codimension(int k, Symmetry symmetry);

} // namespace tindex

#include "tindex/index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tindex/errors.hpp"

namespace tindex {

IndexResult IndexResult::fredholm(int idx, double min_mod, IndexMethod m) {
    IndexResult r;
    r.is_fredholm = true;
    r.index = idx;
    r.min_modulus = min_mod;
    r.method = m;
    return r;
}

IndexResult IndexResult::not_fredholm(double witness, double min_mod, IndexMethod m) {
    IndexResult r;
    r.is_fredholm = false;
    r.witness_theta = witness;
    r.min_modulus = min_mod;
    r.method = m;
    return r;
}

namespace {

struct LoopScan {
    double min_modulus = 0.0;
    double max_modulus = 0.0;
    double argmin_theta = 0.0;
    double max_step = 0.0;
    double total_arg = 0.0;
};

// One pass over a closed loop of samples: modulus extremes plus the
// branch-corrected argument increments.
LoopScan scan_loop(const std::vector<cplx>& f) {
    LoopScan r;
    r.min_modulus = std::abs(f[0]);
    r.max_modulus = r.min_modulus;
    size_t M = f.size();
    for (size_t k = 1; k < M; ++k) {
        double mod = std::abs(f[k]);
        if (mod < r.min_modulus) {
            r.min_modulus = mod;
            r.argmin_theta = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M);
        }
        r.max_modulus = std::max(r.max_modulus, mod);
    }
    for (size_t k = 0; k < M; ++k) {
        cplx a = f[k];
        cplx b = f[(k + 1) % M];
        double d = std::arg(b * std::conj(a));
        r.max_step = std::max(r.max_step, std::abs(d));
        r.total_arg += d;
    }
    return r;
}

int winding_from_scan(const LoopScan& scan, const WindingOptions& opts) {
    if (scan.max_modulus == 0.0 || scan.min_modulus < opts.rel_tol * scan.max_modulus)
        throw NotFredholmError(scan.argmin_theta, scan.min_modulus);
    if (scan.max_step >= opts.max_phase_step)
        throw GridTooCoarseError(scan.max_step);
    double w = scan.total_arg / (2.0 * M_PI);
    return static_cast<int>(std::lround(w));
}

std::vector<cplx> sample_circle(const LaurentSymbol& s, long M) {
    std::vector<cplx> f(static_cast<size_t>(M));
    for (long k = 0; k < M; ++k)
        f[static_cast<size_t>(k)] = s.evaluate(2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M));
    return f;
}

} // namespace

int winding_number(const LaurentSymbol& s, int grid, const WindingOptions& opts) {
    if (grid < 16) throw std::invalid_argument("winding grid must have at least 16 points");
    if (s.is_zero()) throw NotFredholmError(0.0, 0.0);
    long M = grid;
    for (;;) {
        LoopScan scan = scan_loop(sample_circle(s, M));
        if (scan.max_modulus == 0.0 || scan.min_modulus < opts.rel_tol * scan.max_modulus)
            throw NotFredholmError(scan.argmin_theta, scan.min_modulus);
        if (scan.max_step < opts.max_phase_step)
            return static_cast<int>(std::lround(scan.total_arg / (2.0 * M_PI)));
        if (M >= opts.max_grid) throw GridTooCoarseError(scan.max_step);
        M *= 2;
    }
}

int winding_number(const SampledSymbol& s, const WindingOptions& opts) {
    return winding_from_scan(scan_loop(s.samples()), opts);
}

IndexResult toeplitz_index(const LaurentSymbol& s, int grid, const WindingOptions& opts) {
    try {
        int w = winding_number(s, grid, opts);
        // the adaptive pass accepted some grid >= grid; reuse its modulus floor
        double mm = min_modulus_on_circle(s, grid);
        return IndexResult::fredholm(-w, mm, IndexMethod::winding);
    } catch (const NotFredholmError& e) {
        return IndexResult::not_fredholm(e.witness_theta, e.min_modulus, IndexMethod::winding);
    }
}

IndexResult toeplitz_index(const SampledSymbol& s, const WindingOptions& opts) {
    try {
        int w = winding_number(s, opts);
        return IndexResult::fredholm(-w, min_modulus_on_circle(s), IndexMethod::winding);
    } catch (const NotFredholmError& e) {
        return IndexResult::not_fredholm(e.witness_theta, e.min_modulus, IndexMethod::winding);
    }
}

RootReport laurent_roots(const LaurentSymbol& s, double band_tol) {
    if (s.is_zero()) throw ZeroSymbolError();
    if (band_tol <= 0.0) throw std::invalid_argument("band tolerance must be positive");

    // Coefficients of p(z) = z^m f(z), a genuine polynomial of degree hi + m.
    int m = s.pole_order();
    int degree = s.highest() + m;
    std::vector<cplx> poly(static_cast<size_t>(degree) + 1, cplx(0.0));
    for (int k = s.lowest(); k <= s.highest(); ++k)
        poly[static_cast<size_t>(k + m)] = s.coeff(k);

    RootReport report;
    report.pole_order = m;
    report.band_tol = band_tol;
    if (degree > 0) {
        // Companion-matrix eigenvalues; leading coefficient is nonzero by the
        // support-trimming invariant.
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        cplx lead = poly[static_cast<size_t>(degree)];
        for (int r = 1; r < degree; ++r) companion(r, r - 1) = cplx(1.0);
        for (int r = 0; r < degree; ++r)
            companion(r, degree - 1) = -poly[static_cast<size_t>(r)] / lead;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        report.roots.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + degree);
        std::sort(report.roots.begin(), report.roots.end(), [](cplx a, cplx b) {
            double ma = std::abs(a), mb = std::abs(b);
            if (ma != mb) return ma < mb;
            return std::arg(a) < std::arg(b);
        });
    }
    for (const cplx& root : report.roots) {
        double mod = std::abs(root);
        if (std::abs(mod - 1.0) <= band_tol)
            ++report.on_circle_count;
        else if (mod < 1.0)
            ++report.inside_count;
        else
            ++report.outside_count;
    }
    return report;
}

IndexResult index_from_roots(const LaurentSymbol& s, double band_tol) {
    RootReport report = laurent_roots(s, band_tol);

    // Modulus evidence: the uniform grid plus the angles of any near-circle
    // roots, where |f| is smallest.
    double mm = min_modulus_on_circle(s, 1024);
    double witness = 0.0;
    bool have_witness = false;
    for (const cplx& root : report.roots) {
        if (std::abs(std::abs(root) - 1.0) <= 10.0 * band_tol) {
            double theta = std::arg(root);
            double mod = std::abs(s.evaluate(theta));
            if (mod <= mm) {
                mm = mod;
                witness = theta;
                have_witness = true;
            }
        }
    }
    if (report.on_circle_count > 0) {
        if (!have_witness && !report.roots.empty()) witness = std::arg(report.roots[0]);
        return IndexResult::not_fredholm(witness, mm, IndexMethod::roots);
    }
    return IndexResult::fredholm(report.pole_order - report.inside_count, mm,
                                 IndexMethod::roots);
}

int expected_jump_codimension(int k, Symmetry symmetry) {
    if (k < 1) throw std::invalid_argument("jump size must be at least 1");
    if (symmetry == Symmetry::complex_coeffs) return k;
    return (k + 1) / 2;
}

} // namespace tindex

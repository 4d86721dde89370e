#pragma once

#include <Eigen/Dense>

#include "tindex/symbol.hpp"

namespace tindex {

// N x N finite section of T_f: entry(j,k) = c_{j-k}, constant along
// diagonals.
struct ToeplitzTruncation {
    int size = 0;
    Eigen::MatrixXcd entries;
    cplx entry(int j, int k) const { return entries(j, k); }
};

ToeplitzTruncation build_truncation(const LaurentSymbol& s, int N);

// Numerical index witness read off the finite section: |index| decaying
// singular values, sign from residuals of the candidate kernel vectors
// under the doubled-size section vs its adjoint. A cross-check against the
// winding/root oracles, never an oracle of record.
//
// A mode counts toward the magnitude when it sits below sigma_tol, or when
// the doubled section shows it still shrinking geometrically (kernel modes
// of roots near the circle take large N to pass any fixed tolerance; the
// decay identifies them sooner). Anything in between is refused.
struct IndexSignature {
    int magnitude = 0;
    int sign = 0; // 0 when magnitude is 0
    std::vector<double> smallest_sigmas;
};

struct SignatureOptions {
    double sigma_tol = 1e-8;
    double gap_factor = 10.0;        // values this close to tol refuse unless decaying
    double decay_cut = 0.35;         // mode ratio sigma(2N)/sigma(N) below this: kernel
    double stable_cut = 0.75;        // above this: invertible; in between: refuse
    double mode_ceiling_frac = 0.25; // decay-counted modes must stay below this
                                     // fraction of the largest sigma
    double sign_margin = 3.0;        // residual contrast required for the sign call
};

IndexSignature index_signature(const LaurentSymbol& s, int N, double sigma_tol = 1e-8);
IndexSignature index_signature(const LaurentSymbol& s, int N, const SignatureOptions& opts);

// Explicit kernel vector of A = c1 a + c0 in the |c1| > |c0| regime:
// v_n = z0^n with z0 = -c0/c1, residual measured against the N-section.
struct KernelCandidate {
    Eigen::VectorXcd vector;
    double residual = 0.0;
    cplx z0;
};

KernelCandidate kernel_vector_degree1(cplx c0, cplx c1, int N);

// Neumann-series inverse of A = c1 a + c0 in the |c0| > |c1| regime:
// builds the truncated series and returns ||A_N B - I|| in operator norm.
double inverse_series_check(cplx c0, cplx c1, int N, int terms);

// Singular values (ascending) with absolute accuracy on the eps * ||A||
// scale, from the Hermitian embedding [[0, A], [A*, 0]]. A Gram-matrix route
// would floor small sigmas at sqrt(eps) * ||A||, far above sigma_tol.
Eigen::VectorXd accurate_singular_values(const Eigen::MatrixXcd& A);

} // namespace tindex

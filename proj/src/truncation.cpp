#include "tindex/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "tindex/errors.hpp"

namespace tindex {

ToeplitzTruncation build_truncation(const LaurentSymbol& s, int N) {
    if (N < 2) throw std::invalid_argument("truncation size must be at least 2");
    ToeplitzTruncation t;
    t.size = N;
    t.entries = Eigen::MatrixXcd::Zero(N, N);
    // Support outside (-N, N) is cropped away by construction.
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            t.entries(j, k) = s.coeff(j - k);
    return t;
}

Eigen::VectorXd accurate_singular_values(const Eigen::MatrixXcd& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    H.topRightCorner(n, n) = A;
    H.bottomLeftCorner(n, n) = A.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    // Spectrum is {+sigma, -sigma}; the upper half in ascending order is the
    // sigma list up to sign noise near zero.
    Eigen::VectorXd sigmas(n);
    for (int i = 0; i < n; ++i) sigmas(i) = std::abs(es.eigenvalues()(n + i));
    std::sort(sigmas.data(), sigmas.data() + n);
    return sigmas;
}

IndexSignature index_signature(const LaurentSymbol& s, int N, double sigma_tol) {
    SignatureOptions opts;
    opts.sigma_tol = sigma_tol;
    return index_signature(s, N, opts);
}

namespace {

enum class ModeClass { kernel, invertible, ambiguous };

ModeClass classify_mode(double sv, double sv2, double sigma_max, const SignatureOptions& o) {
    if (sv < o.sigma_tol) return ModeClass::kernel;
    double ratio = sv2 / sv;
    if (ratio < o.decay_cut && sv <= o.mode_ceiling_frac * sigma_max) return ModeClass::kernel;
    if (ratio > o.stable_cut) return ModeClass::invertible;
    return ModeClass::ambiguous;
}

} // namespace

IndexSignature index_signature(const LaurentSymbol& s, int N, const SignatureOptions& opts) {
    if (s.is_zero()) throw ZeroSymbolError();
    if (N < 4 * s.support_width())
        throw std::invalid_argument("truncation size must be at least 4x the symbol support");
    if (opts.sigma_tol <= 0.0) throw std::invalid_argument("sigma tolerance must be positive");

    ToeplitzTruncation trunc = build_truncation(s, N);
    ToeplitzTruncation big = build_truncation(s, 2 * N);
    Eigen::VectorXd sigmas = accurate_singular_values(trunc.entries);
    Eigen::VectorXd sigmas2 = accurate_singular_values(big.entries);
    double sigma_max = sigmas(N - 1);

    // Values sitting right at the tolerance make the below-tol count
    // meaningless at this size; refuse them unless the doubled section
    // already shows them decaying (then they are kernel modes either way).
    for (int i = 0; i < N; ++i) {
        double sv = sigmas(i);
        if (sv >= opts.sigma_tol / opts.gap_factor && sv <= opts.sigma_tol * opts.gap_factor &&
            sigmas2(i) >= opts.decay_cut * sv)
            throw InconclusiveError("singular value " + std::to_string(sv) +
                                    " within a factor " + std::to_string(opts.gap_factor) +
                                    " of tolerance and not decaying");
    }

    // Kernel modes form a prefix of the ascending sigma list. Walk it, then
    // demand the next mode be visibly size-stable and spot-check that no
    // decaying mode hides above the cut.
    int magnitude = 0;
    while (magnitude < N) {
        ModeClass mc = classify_mode(sigmas(magnitude), sigmas2(magnitude), sigma_max, opts);
        if (mc == ModeClass::kernel) {
            ++magnitude;
            continue;
        }
        if (mc == ModeClass::ambiguous)
            throw InconclusiveError("mode " + std::to_string(magnitude) +
                                    " neither decaying nor stable: " +
                                    std::to_string(sigmas(magnitude)) + " -> " +
                                    std::to_string(sigmas2(magnitude)));
        break;
    }
    for (int i = magnitude + 1; i < std::min(N, magnitude + 8); ++i)
        if (classify_mode(sigmas(i), sigmas2(i), sigma_max, opts) == ModeClass::kernel)
            throw InconclusiveError("decaying mode above a stable one at position " +
                                    std::to_string(i));

    IndexSignature sig;
    sig.magnitude = magnitude;
    int keep = std::min(8, N);
    sig.smallest_sigmas.assign(sigmas.data(), sigmas.data() + keep);
    if (magnitude == 0) return sig;

    // Candidate kernel bases of A and A* from the Gram matrices; the values
    // are unreliable at this scale but the invariant subspaces are fine.
    const Eigen::MatrixXcd& A = trunc.entries;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> right(A.adjoint() * A);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> left(A * A.adjoint());

    // Sign test at size 2N: genuine kernel vectors stay near-null when
    // zero-padded into the bigger section, spurious ones do not.
    double res_a = 0.0, res_adj = 0.0;
    for (int i = 0; i < magnitude; ++i) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * N);
        v.head(N) = right.eigenvectors().col(i);
        res_a = std::max(res_a, (big.entries * v).norm());
        Eigen::VectorXcd u = Eigen::VectorXcd::Zero(2 * N);
        u.head(N) = left.eigenvectors().col(i);
        res_adj = std::max(res_adj, (big.entries.adjoint() * u).norm());
    }
    if (std::max(res_a, res_adj) < opts.sign_margin * std::min(res_a, res_adj))
        throw InconclusiveError("sign residuals too close to call: " + std::to_string(res_a) +
                                " vs " + std::to_string(res_adj));
    sig.sign = res_a < res_adj ? 1 : -1;
    return sig;
}

KernelCandidate kernel_vector_degree1(cplx c0, cplx c1, int N) {
    if (N < 2) throw std::invalid_argument("truncation size must be at least 2");
    if (!(std::abs(c1) > std::abs(c0)))
        throw WrongRegimeError("kernel vector exists only for |c1| > |c0|");

    KernelCandidate kc;
    kc.z0 = -c0 / c1;
    kc.vector = Eigen::VectorXcd(N);
    cplx p(1.0);
    for (int n = 0; n < N; ++n) {
        kc.vector(n) = p;
        p *= kc.z0;
    }
    // f = c1 z^-1 + c0 is the symbol of A = c1 a + c0; only the cropped last
    // row contributes to the residual.
    LaurentSymbol f = from_shift_polynomial(
        ShiftPolynomial::from_coeffs(0, {c0, c1}));
    ToeplitzTruncation t = build_truncation(f, N);
    kc.residual = (t.entries * kc.vector).norm() / kc.vector.norm();
    return kc;
}

double inverse_series_check(cplx c0, cplx c1, int N, int terms) {
    if (N < 2) throw std::invalid_argument("truncation size must be at least 2");
    if (terms < 1) throw std::invalid_argument("series needs at least one term");
    if (!(std::abs(c0) > std::abs(c1)))
        throw WrongRegimeError("Neumann series converges only for |c0| > |c1|");

    // B = sum_{n < terms} (-1)^n c1^n / c0^{n+1} a^n; a^n is the n-th
    // superdiagonal, so assemble B diagonal by diagonal.
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(N, N);
    cplx coef = 1.0 / c0;
    for (int n = 0; n < terms && n < N; ++n) {
        for (int j = 0; j + n < N; ++j) B(j, j + n) = coef;
        coef *= -c1 / c0;
    }
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        A(j, j) = c0;
        if (j + 1 < N) A(j, j + 1) = c1;
    }
    Eigen::MatrixXcd R = A * B - Eigen::MatrixXcd::Identity(N, N);

    // Operator norm by power iteration on R* R; the residual matrix is a
    // scaled shift power, so this converges immediately.
    Eigen::VectorXcd x = Eigen::VectorXcd::Ones(N).normalized();
    double norm2 = 0.0;
    for (int it = 0; it < 100; ++it) {
        Eigen::VectorXcd y = R.adjoint() * (R * x);
        double ny = y.norm();
        if (ny == 0.0) return 0.0;
        norm2 = ny;
        x = y / ny;
    }
    return std::sqrt(norm2);
}

} // namespace tindex

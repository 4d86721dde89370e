#include "tindex/qhe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "tindex/errors.hpp"
#include "tindex/parallel.hpp"
#include "tindex/rng.hpp"

namespace tindex {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

LandauWeights landau_pup_weights(int m_max) {
    if (m_max < 1) throw std::invalid_argument("need m_max >= 1");
    LandauWeights lw;
    lw.m_max = m_max;
    lw.w.resize(static_cast<size_t>(m_max) + 1);
    // Exact ratio recurrence w_m = w_{m-1} (m + 1/2)/m sqrt(m/(m+1)) from
    // w_0 = sqrt(pi)/2. A log-gamma difference drifts by ~1e-10 relative
    // near m = 1e5, wiping out the 1/(8 m^2) asymptote residual; the
    // recurrence stays at rounding level and cannot overflow.
    lw.w[0] = std::sqrt(M_PI) / 2.0;
    for (int m = 1; m <= m_max; ++m)
        lw.w[static_cast<size_t>(m)] = lw.w[static_cast<size_t>(m - 1)] * (m + 0.5) / m *
                                       std::sqrt(static_cast<double>(m) / (m + 1.0));
    return lw;
}

double compactness_witness(const LandauWeights& weights) {
    if (weights.m_max < 10) throw std::invalid_argument("need m_max >= 10");
    double sup = 0.0;
    for (int m = weights.m_max / 2; m <= weights.m_max; ++m)
        sup = std::max(sup, std::abs(weights.w[static_cast<size_t>(m)] - 1.0));
    return sup;
}

LatticeModel build_lattice_model(int L, Flux flux, double disorder_amp, uint64_t seed) {
    if (L < 8) throw std::invalid_argument("lattice side must be at least 8");
    if (flux.q <= 0) throw std::invalid_argument("flux denominator must be positive");
    if (disorder_amp < 0.0) throw std::invalid_argument("disorder amplitude must be non-negative");

    LatticeModel m;
    m.L = L;
    m.flux = flux;
    m.disorder_amp = disorder_amp;
    m.seed = seed;
    const int n = L * L;
    m.hamiltonian = MatrixXcd::Zero(n, n);
    m.x.resize(static_cast<size_t>(n));
    m.y.resize(static_cast<size_t>(n));

    auto id = [L](int x, int y) { return x * L + y; };
    const double center = (L - 1) / 2.0;
    const double phi = flux.value();
    std::mt19937_64 rng(splitmix64(seed));

    for (int x = 0; x < L; ++x) {
        for (int y = 0; y < L; ++y) {
            int j = id(x, y);
            // Centered coordinates; odd sides are shifted by half a cell so
            // no site sits at the flux-insertion origin.
            m.x[static_cast<size_t>(j)] = x - center + (L % 2 == 1 ? 0.5 : 0.0);
            m.y[static_cast<size_t>(j)] = y - center + (L % 2 == 1 ? 0.5 : 0.0);
            if (x + 1 < L) {
                m.hamiltonian(j, id(x + 1, y)) = -1.0;
                m.hamiltonian(id(x + 1, y), j) = -1.0;
            }
            if (y + 1 < L) {
                // Landau gauge: the flux 2 pi p/q threads each plaquette
                // through the y-bond phases. Orientation fixed so the bulk
                // trace estimate matches the gap labels with positive sign.
                cplx t = -std::polar(1.0, -2.0 * M_PI * phi * x);
                m.hamiltonian(j, id(x, y + 1)) = t;
                m.hamiltonian(id(x, y + 1), j) = std::conj(t);
            }
            m.hamiltonian(j, j) += disorder_amp * uniform_pm1(rng);
        }
    }
    return m;
}

SpectralData diagonalize(const LatticeModel& model) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(model.hamiltonian);
    SpectralData sd;
    sd.eigenvalues = es.eigenvalues();
    sd.eigenvectors = es.eigenvectors();
    return sd;
}

int SpectralData::fill_count(double energy) const {
    const double* begin = eigenvalues.data();
    const double* end = begin + eigenvalues.size();
    return static_cast<int>(std::upper_bound(begin, end, energy) - begin);
}

namespace {

constexpr double kDegenerateTol = 1e-12;

void check_degenerate(const SpectralData& sd, double E) {
    for (int i = 0; i < sd.eigenvalues.size(); ++i)
        if (std::abs(E - sd.eigenvalues(i)) < kDegenerateTol)
            throw DegenerateFermiError(E);
}

VectorXd fermi_weights(const SpectralData& sd, double beta, double E) {
    VectorXd f(sd.eigenvalues.size());
    for (int i = 0; i < f.size(); ++i)
        f(i) = 0.5 * (1.0 - std::tanh(0.5 * beta * (sd.eigenvalues(i) - E)));
    return f;
}

std::vector<int> window_sites(const LatticeModel& model, TraceWindow window) {
    std::vector<int> idx;
    double radius = window.radius_fraction * model.L;
    for (int j = 0; j < model.sites(); ++j)
        if (std::hypot(model.x[static_cast<size_t>(j)], model.y[static_cast<size_t>(j)]) <= radius)
            idx.push_back(j);
    return idx;
}

} // namespace

ProjectionLike spectral_projection(const SpectralData& sd, double E) {
    check_degenerate(sd, E);
    int fill = sd.fill_count(E);
    ProjectionLike p;
    p.kind = ProjectionKind::spectral;
    p.energy = E;
    const auto& V = sd.eigenvectors;
    if (fill == 0)
        p.matrix = MatrixXcd::Zero(V.rows(), V.rows());
    else
        p.matrix = V.leftCols(fill) * V.leftCols(fill).adjoint();
    return p;
}

ProjectionLike fermi_function(const SpectralData& sd, double beta, double E) {
    if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
    ProjectionLike p;
    p.kind = ProjectionKind::fermi;
    p.energy = E;
    p.beta = beta;
    VectorXd f = fermi_weights(sd, beta, E);
    p.matrix = sd.eigenvectors * f.asDiagonal() * sd.eigenvectors.adjoint();
    return p;
}

Eigen::VectorXcd flux_unitary(const LatticeModel& model, double origin_x, double origin_y) {
    VectorXcd u(model.sites());
    for (int j = 0; j < model.sites(); ++j) {
        cplx z(model.x[static_cast<size_t>(j)] - origin_x,
               model.y[static_cast<size_t>(j)] - origin_y);
        double r = std::abs(z);
        if (r < 0.1) throw OriginOnSiteError();
        u(j) = z / r;
    }
    return u;
}

double index_trace_estimate(const ProjectionLike& P, const LatticeModel& model,
                            const Eigen::VectorXcd& U, int k, TraceWindow window) {
    if (k < 1) throw std::invalid_argument("need k >= 1");
    if (P.matrix.rows() != model.sites() || U.size() != model.sites())
        throw std::invalid_argument("projection, unitary and model sizes disagree");

    MatrixXcd conj = U.asDiagonal() * P.matrix * U.conjugate().asDiagonal();
    MatrixXcd M = P.matrix - conj;
    MatrixXcd Mpow = M * M; // M^2
    for (int i = 1; i < k; ++i) Mpow = Mpow * M * M;
    // window trace of M^{2k+1} = sum_j row_j(M^{2k}) col_j(M)
    cplx tr(0.0);
    for (int j : window_sites(model, window)) tr += (Mpow.row(j) * M.col(j)).value();
    return tr.real();
}

double spectral_trace_estimate(const SpectralData& sd, const LatticeModel& model,
                               double E, const Eigen::VectorXcd& U, int k,
                               TraceWindow window) {
    if (k < 1) throw std::invalid_argument("need k >= 1");
    check_degenerate(sd, E);
    const int n = model.sites();
    int fill = sd.fill_count(E);
    if (fill == 0 || fill == n) return 0.0;

    // P - U P U* = X S X* with X = [Q, UQ] and S = diag(I, -I), so any trace
    // against a diagonal window reduces to Gram matrices of the filled
    // eigenvector block. Above half filling use the complementary block,
    // which flips the sign of the odd power.
    bool complement = fill > n / 2;
    int f = complement ? n - fill : fill;
    MatrixXcd Q = complement ? sd.eigenvectors.rightCols(f) : sd.eigenvectors.leftCols(f);
    MatrixXcd UQ = U.asDiagonal() * Q;
    MatrixXcd B = Q.adjoint() * UQ;

    MatrixXcd T(2 * f, 2 * f); // S G with G = X* X
    T.topLeftCorner(f, f).setIdentity();
    T.topRightCorner(f, f) = B;
    T.bottomLeftCorner(f, f) = -B.adjoint();
    T.bottomRightCorner(f, f) = -MatrixXcd::Identity(f, f);

    std::vector<int> win = window_sites(model, window);
    MatrixXcd Qw(static_cast<int>(win.size()), f), UQw(static_cast<int>(win.size()), f);
    for (int i = 0; i < static_cast<int>(win.size()); ++i) {
        Qw.row(i) = Q.row(win[static_cast<size_t>(i)]);
        UQw.row(i) = UQ.row(win[static_cast<size_t>(i)]);
    }
    MatrixXcd GW(2 * f, 2 * f); // X* Pi X over the window
    GW.topLeftCorner(f, f) = Qw.adjoint() * Qw;
    GW.topRightCorner(f, f) = Qw.adjoint() * UQw;
    GW.bottomLeftCorner(f, f) = UQw.adjoint() * Qw;
    GW.bottomRightCorner(f, f) = UQw.adjoint() * UQw;

    // Tr_W(M^{2k+1}) = Tr(GW T^{2k} S)
    MatrixXcd T2 = T * T;
    MatrixXcd Tpow = T2;
    for (int i = 1; i < k; ++i) Tpow = Tpow * T2;
    Tpow.rightCols(f) *= -1.0; // right-multiply by S
    cplx tr = GW.cwiseProduct(Tpow.transpose()).sum();
    return complement ? -tr.real() : tr.real();
}

Eigen::MatrixXcd build_C(const ProjectionLike& P, const Eigen::VectorXcd& U) {
    const auto& p = P.matrix;
    MatrixXcd up = U.asDiagonal() * p;
    return p * up + MatrixXcd::Identity(p.rows(), p.cols()) - p;
}

Eigen::MatrixXcd build_C_beta(const SpectralData& sd, double beta, double E,
                              const Eigen::VectorXcd& U) {
    ProjectionLike pb = fermi_function(sd, beta, E);
    const auto& p = pb.matrix;
    MatrixXcd up = U.asDiagonal() * p;
    return p * up + MatrixXcd::Identity(p.rows(), p.cols()) - p * p;
}

StepCurve hall_step_scan(const LatticeModel& model, const SpectralData& sd,
                         const std::vector<double>& energy_grid, ScanMode mode,
                         double beta, int k, TraceWindow window, int threads) {
    for (size_t i = 1; i < energy_grid.size(); ++i)
        if (energy_grid[i] < energy_grid[i - 1])
            throw std::invalid_argument("energy grid must be sorted");
    if (mode == ScanMode::fermi && beta <= 0.0)
        throw std::invalid_argument("fermi scans need beta > 0");

    StepCurve curve;
    curve.mode = mode;
    curve.beta = mode == ScanMode::fermi ? beta : 0.0;
    curve.k = k;
    curve.L = model.L;
    curve.flux = model.flux;
    curve.disorder_amp = model.disorder_amp;
    curve.seed = model.seed;
    const long n_points = static_cast<long>(energy_grid.size());
    curve.energies = energy_grid;
    curve.estimates.assign(energy_grid.size(), 0.0);
    curve.flags.assign(energy_grid.size(), "");
    const VectorXcd U = flux_unitary(model);

    if (mode == ScanMode::spectral) {
        // The projection only changes when E crosses an eigenvalue, so
        // compute one estimate per distinct fill level.
        const double shift = 1e-9 * sd.bandwidth();
        std::vector<int> fills(energy_grid.size());
        std::vector<double> effective(energy_grid);
        for (size_t i = 0; i < energy_grid.size(); ++i) {
            try {
                check_degenerate(sd, effective[i]);
            } catch (const DegenerateFermiError&) {
                effective[i] += shift;
                curve.flags[i] = "shifted";
            }
            fills[i] = sd.fill_count(effective[i]);
        }
        std::vector<long> unique_idx;
        for (size_t i = 0; i < fills.size(); ++i)
            if (i == 0 || fills[i] != fills[i - 1]) unique_idx.push_back(static_cast<long>(i));
        std::vector<double> unique_val(unique_idx.size());
        parallel_for(static_cast<long>(unique_idx.size()), threads, [&](long u) {
            size_t i = static_cast<size_t>(unique_idx[static_cast<size_t>(u)]);
            unique_val[static_cast<size_t>(u)] =
                spectral_trace_estimate(sd, model, effective[i], U, k, window);
        });
        size_t u = 0;
        for (size_t i = 0; i < fills.size(); ++i) {
            if (u + 1 < unique_idx.size() && static_cast<long>(i) >= unique_idx[u + 1]) ++u;
            curve.estimates[i] = unique_val[u];
        }
    } else {
        parallel_for(n_points, threads, [&](long i) {
            ProjectionLike pb = fermi_function(sd, beta, energy_grid[static_cast<size_t>(i)]);
            curve.estimates[static_cast<size_t>(i)] =
                index_trace_estimate(pb, model, U, k, window);
        });
    }
    return curve;
}

double smallest_singular_value(const Eigen::MatrixXcd& A) {
    Eigen::PartialPivLU<MatrixXcd> lu(A);
    // Inverse iteration on (A* A)^{-1}; near-singular matrices converge in a
    // couple of steps.
    VectorXcd x = VectorXcd::Ones(A.rows()).normalized();
    double growth = 0.0;
    for (int it = 0; it < 50; ++it) {
        VectorXcd y = lu.adjoint().solve(x);
        VectorXcd z = lu.solve(y);
        double nz = z.norm();
        if (!std::isfinite(nz) || nz == 0.0) return 0.0;
        growth = nz;
        x = z / nz;
    }
    return 1.0 / std::sqrt(growth);
}

} // namespace tindex

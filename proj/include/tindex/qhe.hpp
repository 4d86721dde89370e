#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace tindex {

// Lowest-Landau-level matrix elements of the vortex phase:
// <m+1|U|m> = Gamma(m + 3/2) / (m! sqrt(m+1)), evaluated through log-gamma
// differences so nothing overflows.
struct LandauWeights {
    int m_max = 0;
    std::vector<double> w; // w[m], m = 0..m_max
};

LandauWeights landau_pup_weights(int m_max);

// sup_{m >= m_max/2} |w[m] - 1|: the tail size of the weighted shift by
// which PUP misses being exactly Toeplitz. Decays like 1/(4 m_max).
double compactness_witness(const LandauWeights& weights);

struct Flux {
    int p = 0;
    int q = 1;
    double value() const { return static_cast<double>(p) / q; }
};

// L x L open-boundary square lattice with Peierls phases (Landau gauge) and
// i.i.d. uniform diagonal disorder. Site coordinates are centered so the
// central plaquette surrounds the origin (odd L is shifted by half a cell).
struct LatticeModel {
    int L = 0;
    Flux flux;
    double disorder_amp = 0.0;
    uint64_t seed = 0;
    Eigen::MatrixXcd hamiltonian;
    std::vector<double> x; // centered site coordinates
    std::vector<double> y;
    int sites() const { return L * L; }
};

LatticeModel build_lattice_model(int L, Flux flux, double disorder_amp, uint64_t seed);

// One-time eigendecomposition, shared read-only by energy scans.
struct SpectralData {
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXcd eigenvectors;
    double bandwidth() const {
        return eigenvalues(eigenvalues.size() - 1) - eigenvalues(0);
    }
    int fill_count(double energy) const; // states with eigenvalue <= energy
};

SpectralData diagonalize(const LatticeModel& model);

enum class ProjectionKind { spectral, fermi };

struct ProjectionLike {
    Eigen::MatrixXcd matrix;
    ProjectionKind kind = ProjectionKind::spectral;
    double energy = 0.0;
    double beta = 0.0; // fermi kind only
};

// Spectral projection onto eigenvalues <= E. Throws DegenerateFermiError
// when E collides with an eigenvalue (within 1e-12); callers shift E instead
// of guessing a side.
ProjectionLike spectral_projection(const SpectralData& sd, double E);

// Fermi function 1/(exp(beta (H - E)) + 1); eigenvalues in (0, 1).
ProjectionLike fermi_function(const SpectralData& sd, double beta, double E);

// Diagonal vortex phase U_jj = (x + i y)/|x + i y| relative to an origin
// offset that must keep clear of every site.
Eigen::VectorXcd flux_unitary(const LatticeModel& model, double origin_x = 0.0,
                              double origin_y = 0.0);

// The trace of (P - U P U*)^{2k+1} over the bulk disk |r| <= radius_fraction
// * L. The full-lattice trace telescopes to zero identically in finite
// dimensions, so the bulk window is what carries the index: the vortex
// density accumulates near the origin and the compensating charge stays on
// the boundary ring.
struct TraceWindow {
    double radius_fraction = 0.30;
};

double index_trace_estimate(const ProjectionLike& P, const LatticeModel& model,
                            const Eigen::VectorXcd& U, int k, TraceWindow window = {});

// Fast equivalent of index_trace_estimate for spectral projections, working
// on the eigenvector block instead of the full matrix.
double spectral_trace_estimate(const SpectralData& sd, const LatticeModel& model,
                               double E, const Eigen::VectorXcd& U, int k,
                               TraceWindow window = {});

// C = P U P + 1 - P and its Fermi-smoothed variant
// C_beta = P_b U P_b + (1 - P_b^2), returned dense for spectral probing.
Eigen::MatrixXcd build_C(const ProjectionLike& P, const Eigen::VectorXcd& U);
Eigen::MatrixXcd build_C_beta(const SpectralData& sd, double beta, double E,
                              const Eigen::VectorXcd& U);

enum class ScanMode { spectral, fermi };

struct StepCurve {
    std::vector<double> energies;
    std::vector<double> estimates;
    std::vector<std::string> flags; // empty or "shifted" per point
    ScanMode mode = ScanMode::spectral;
    double beta = 0.0;
    int k = 1;
    int L = 0;
    Flux flux;
    double disorder_amp = 0.0;
    uint64_t seed = 0;
};

StepCurve hall_step_scan(const LatticeModel& model, const SpectralData& sd,
                         const std::vector<double>& energy_grid, ScanMode mode,
                         double beta, int k, TraceWindow window = {}, int threads = 0);

// Smallest singular value by inverse iteration on the LU factors; used to
// probe where the C_beta family degenerates.
double smallest_singular_value(const Eigen::MatrixXcd& A);

} // namespace tindex

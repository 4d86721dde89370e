#pragma once

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace tindex {

using cplx = std::complex<double>;

// Laurent polynomial f(z) = sum_{i=lo..hi} c_i z^i evaluated on the unit
// circle. Coefficients are stored densely over the support; the recorded
// bounds are always the true support extremes (end coefficients nonzero),
// except for the zero symbol which has an empty coefficient list.
class LaurentSymbol {
public:
    LaurentSymbol() = default; // zero symbol

    static LaurentSymbol monomial(int exponent, cplx coefficient = 1.0);
    static LaurentSymbol constant(cplx value) { return monomial(0, value); }
    static LaurentSymbol from_coeffs(int lowest, std::vector<cplx> coeffs);
    static LaurentSymbol from_map(const std::map<int, cplx>& coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    int lowest() const { return lo_; }                        // -m
    int highest() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    int pole_order() const { return is_zero() ? 0 : std::max(0, -lowest()); }
    int support_width() const { return static_cast<int>(coeffs_.size()); }

    // 0 outside the stored support
    cplx coeff(int exponent) const;
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    cplx evaluate(double theta) const;   // f(e^{i theta})
    cplx evaluate_at(cplx z) const;      // generic point, z != 0 when lo < 0

    LaurentSymbol reversed() const;      // g(z) = f(1/z)
    LaurentSymbol theta_derivative() const; // d/dtheta f(e^{i theta}) as a symbol

    friend LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b);
    friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);
    friend LaurentSymbol operator*(cplx s, const LaurentSymbol& a);

private:
    int lo_ = 0;
    std::vector<cplx> coeffs_;
};

// Shift-operator polynomial A = sum c_i a^i with a the left shift
// (a e_n = e_{n-1}, a e_0 = 0) and a^{-1} read formally as the right shift.
// Kept distinct from LaurentSymbol so the orientation convention can only be
// crossed through from_shift_polynomial.
class ShiftPolynomial {
public:
    ShiftPolynomial() = default;
    static ShiftPolynomial from_coeffs(int lowest_power, std::vector<cplx> coeffs);
    static ShiftPolynomial from_map(const std::map<int, cplx>& coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    int lowest() const { return lo_; }
    int highest() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
    cplx coeff(int power) const;

    friend ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b);

private:
    int lo_ = 0;
    std::vector<cplx> coeffs_;
};

// Orientation convention: a = T_{z^-1}, so A = sum c_i a^i maps to the
// symbol f(z) = sum c_i z^{-i} and Index(T_f) = Index(A).
LaurentSymbol from_shift_polynomial(const ShiftPolynomial& p);

// Values of f on the uniform angular grid theta_k = 2 pi k / M together with
// the smoothness class the samples are trusted to have.
class SampledSymbol {
public:
    SampledSymbol(std::vector<cplx> samples, int smoothness);
    static SampledSymbol from_function(int grid_size, int smoothness,
                                       const std::function<cplx(double)>& f);

    int size() const { return static_cast<int>(samples_.size()); }
    int smoothness() const { return smoothness_; }
    double theta(int k) const;
    const std::vector<cplx>& samples() const { return samples_; }

private:
    std::vector<cplx> samples_;
    int smoothness_ = 0;
};

// Annulus r0 <= |z| <= r1 strictly containing the unit circle.
struct AnnulusSpec {
    AnnulusSpec(double r0, double r1);
    double r0;
    double r1;
};

// min over the M-point uniform grid of |f|; nested grids (M, 2M, ...) give a
// non-increasing sequence.
double min_modulus_on_circle(const LaurentSymbol& s, int grid);
double min_modulus_on_circle(const SampledSymbol& s);

// sum_i |c_i| (r0^i + r1^i), the Wiener-type norm of the analytic extension.
double annulus_norm(const LaurentSymbol& s, const AnnulusSpec& a);

// C^ell norm as sum_{j<=ell} sup |f^(j)|, sups taken over a uniform grid.
double c_ell_norm(const LaurentSymbol& s, int ell, int grid = 4096);
double c_ell_norm(const SampledSymbol& s, int ell);

// Fourier coefficients of the trigonometric interpolant, index k stored at
// position k mod M (spectral differentiation uses k in [-M/2, M/2)).
std::vector<cplx> fourier_coefficients(const SampledSymbol& s);

} // namespace tindex

#include "tindex/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace tindex {

namespace {

// Trim exact zeros from both ends so the stored bounds are the true support.
void trim(int& lo, std::vector<cplx>& c) {
    size_t begin = 0;
    while (begin < c.size() && c[begin] == cplx(0.0)) ++begin;
    size_t end = c.size();
    while (end > begin && c[end - 1] == cplx(0.0)) --end;
    if (begin == end) {
        lo = 0;
        c.clear();
        return;
    }
    lo += static_cast<int>(begin);
    c = std::vector<cplx>(c.begin() + begin, c.begin() + end);
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

void check_finite(const std::vector<cplx>& c) {
    for (const auto& v : c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("symbol coefficients must be finite");
}

} // namespace

LaurentSymbol LaurentSymbol::monomial(int exponent, cplx coefficient) {
    return from_coeffs(exponent, {coefficient});
}

LaurentSymbol LaurentSymbol::from_coeffs(int lowest, std::vector<cplx> coeffs) {
    check_finite(coeffs);
    LaurentSymbol s;
    s.lo_ = lowest;
    s.coeffs_ = std::move(coeffs);
    trim(s.lo_, s.coeffs_);
    return s;
}

LaurentSymbol LaurentSymbol::from_map(const std::map<int, cplx>& coeffs) {
    if (coeffs.empty()) return LaurentSymbol();
    int lo = coeffs.begin()->first;
    int hi = coeffs.rbegin()->first;
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx(0.0));
    for (const auto& [k, v] : coeffs) c[static_cast<size_t>(k - lo)] = v;
    return from_coeffs(lo, std::move(c));
}

cplx LaurentSymbol::coeff(int exponent) const {
    if (is_zero() || exponent < lowest() || exponent > highest()) return cplx(0.0);
    return coeffs_[static_cast<size_t>(exponent - lo_)];
}

cplx LaurentSymbol::evaluate(double theta) const {
    cplx sum(0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        int k = lo_ + static_cast<int>(i);
        sum += coeffs_[i] * std::polar(1.0, theta * k);
    }
    return sum;
}

cplx LaurentSymbol::evaluate_at(cplx z) const {
    if (is_zero()) return cplx(0.0);
    // Horner over the polynomial part, explicit powers for the pole part.
    cplx sum(0.0);
    for (size_t i = coeffs_.size(); i-- > 0;) {
        sum = sum * z + coeffs_[i];
    }
    if (lo_ != 0) sum *= std::pow(z, lo_);
    return sum;
}

LaurentSymbol LaurentSymbol::reversed() const {
    if (is_zero()) return LaurentSymbol();
    std::vector<cplx> c(coeffs_.rbegin(), coeffs_.rend());
    return from_coeffs(-highest(), std::move(c));
}

LaurentSymbol LaurentSymbol::theta_derivative() const {
    std::vector<cplx> c = coeffs_;
    for (size_t i = 0; i < c.size(); ++i) {
        int k = lo_ + static_cast<int>(i);
        c[i] *= cplx(0.0, static_cast<double>(k));
    }
    return from_coeffs(lo_, std::move(c));
}

LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b) {
    if (a.is_zero() || b.is_zero()) return LaurentSymbol();
    return LaurentSymbol::from_coeffs(a.lo_ + b.lo_, convolve(a.coeffs_, b.coeffs_));
}

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.lowest(), b.lowest());
    int hi = std::max(a.highest(), b.highest());
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx(0.0));
    for (int k = a.lowest(); k <= a.highest(); ++k) c[static_cast<size_t>(k - lo)] += a.coeff(k);
    for (int k = b.lowest(); k <= b.highest(); ++k) c[static_cast<size_t>(k - lo)] += b.coeff(k);
    return LaurentSymbol::from_coeffs(lo, std::move(c));
}

LaurentSymbol operator*(cplx s, const LaurentSymbol& a) {
    std::vector<cplx> c = a.coeffs_;
    for (auto& v : c) v *= s;
    return LaurentSymbol::from_coeffs(a.lo_, std::move(c));
}

ShiftPolynomial ShiftPolynomial::from_coeffs(int lowest_power, std::vector<cplx> coeffs) {
    check_finite(coeffs);
    ShiftPolynomial p;
    p.lo_ = lowest_power;
    p.coeffs_ = std::move(coeffs);
    trim(p.lo_, p.coeffs_);
    return p;
}

ShiftPolynomial ShiftPolynomial::from_map(const std::map<int, cplx>& coeffs) {
    if (coeffs.empty()) return ShiftPolynomial();
    int lo = coeffs.begin()->first;
    int hi = coeffs.rbegin()->first;
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx(0.0));
    for (const auto& [k, v] : coeffs) c[static_cast<size_t>(k - lo)] = v;
    return from_coeffs(lo, std::move(c));
}

cplx ShiftPolynomial::coeff(int power) const {
    if (is_zero() || power < lowest() || power > highest()) return cplx(0.0);
    return coeffs_[static_cast<size_t>(power - lo_)];
}

ShiftPolynomial operator*(const ShiftPolynomial& a, const ShiftPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return ShiftPolynomial();
    return ShiftPolynomial::from_coeffs(a.lo_ + b.lo_, convolve(a.coeffs_, b.coeffs_));
}

LaurentSymbol from_shift_polynomial(const ShiftPolynomial& p) {
    if (p.is_zero()) return LaurentSymbol();
    std::map<int, cplx> m;
    for (int k = p.lowest(); k <= p.highest(); ++k) m[-k] = p.coeff(k);
    return LaurentSymbol::from_map(m);
}

SampledSymbol::SampledSymbol(std::vector<cplx> samples, int smoothness)
    : samples_(std::move(samples)), smoothness_(smoothness) {
    if (samples_.size() < 16 || samples_.size() % 2 != 0)
        throw std::invalid_argument("sample grid must be even and have at least 16 points");
    if (smoothness_ < 0)
        throw std::invalid_argument("smoothness class must be non-negative");
    check_finite(samples_);
}

SampledSymbol SampledSymbol::from_function(int grid_size, int smoothness,
                                           const std::function<cplx(double)>& f) {
    std::vector<cplx> s(static_cast<size_t>(grid_size));
    for (int k = 0; k < grid_size; ++k)
        s[static_cast<size_t>(k)] = f(2.0 * M_PI * k / grid_size);
    return SampledSymbol(std::move(s), smoothness);
}

double SampledSymbol::theta(int k) const {
    return 2.0 * M_PI * k / size();
}

AnnulusSpec::AnnulusSpec(double r0_, double r1_) : r0(r0_), r1(r1_) {
    if (!(0.0 < r0 && r0 < 1.0 && 1.0 < r1))
        throw std::invalid_argument("annulus must satisfy 0 < r0 < 1 < r1");
}

double min_modulus_on_circle(const LaurentSymbol& s, int grid) {
    if (grid < 16) throw std::invalid_argument("modulus grid must have at least 16 points");
    double best = std::abs(s.evaluate(0.0));
    for (int k = 1; k < grid; ++k)
        best = std::min(best, std::abs(s.evaluate(2.0 * M_PI * k / grid)));
    return best;
}

double min_modulus_on_circle(const SampledSymbol& s) {
    double best = std::abs(s.samples()[0]);
    for (const auto& v : s.samples()) best = std::min(best, std::abs(v));
    return best;
}

double annulus_norm(const LaurentSymbol& s, const AnnulusSpec& a) {
    double sum = 0.0;
    for (int k = s.lowest(); k <= s.highest() && !s.is_zero(); ++k)
        sum += std::abs(s.coeff(k)) * (std::pow(a.r0, k) + std::pow(a.r1, k));
    return sum;
}

double c_ell_norm(const LaurentSymbol& s, int ell, int grid) {
    if (ell < 0) throw std::invalid_argument("ell must be non-negative");
    if (grid < 16) throw std::invalid_argument("norm grid must have at least 16 points");
    double norm = 0.0;
    LaurentSymbol d = s;
    for (int j = 0; j <= ell; ++j) {
        double sup = 0.0;
        for (int k = 0; k < grid; ++k)
            sup = std::max(sup, std::abs(d.evaluate(2.0 * M_PI * k / grid)));
        norm += sup;
        d = d.theta_derivative();
    }
    return norm;
}

std::vector<cplx> fourier_coefficients(const SampledSymbol& s) {
    Eigen::FFT<double> fft;
    std::vector<cplx> spectrum;
    std::vector<cplx> in = s.samples();
    fft.fwd(spectrum, in);
    for (auto& v : spectrum) v /= static_cast<double>(s.size());
    return spectrum;
}

double c_ell_norm(const SampledSymbol& s, int ell) {
    if (ell < 0) throw std::invalid_argument("ell must be non-negative");
    if (ell > s.smoothness())
        throw std::invalid_argument("requested ell exceeds the sample smoothness class");
    int M = s.size();
    std::vector<cplx> spectrum = fourier_coefficients(s);
    Eigen::FFT<double> fft;
    double norm = 0.0;
    std::vector<cplx> deriv_spectrum(spectrum.size());
    std::vector<cplx> samples;
    for (int j = 0; j <= ell; ++j) {
        for (int idx = 0; idx < M; ++idx) {
            int k = idx <= M / 2 ? idx : idx - M;
            // Nyquist mode has no well-defined odd derivative on this grid.
            if (idx == M / 2 && j % 2 == 1) {
                deriv_spectrum[static_cast<size_t>(idx)] = cplx(0.0);
                continue;
            }
            deriv_spectrum[static_cast<size_t>(idx)] =
                spectrum[static_cast<size_t>(idx)] *
                std::pow(cplx(0.0, static_cast<double>(k)), j);
        }
        fft.inv(samples, deriv_spectrum);
        double sup = 0.0;
        for (const auto& v : samples) sup = std::max(sup, std::abs(v) * M);
        norm += sup;
    }
    return norm;
}

} // namespace tindex

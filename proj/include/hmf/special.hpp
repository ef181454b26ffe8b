#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hmf/errors.hpp"
#include "hmf/log_scale.hpp"

namespace hmf::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Principal branch of log Gamma(z), continuous off the negative real axis,
// normalized by log Gamma(1) = 0.  Stirling series after argument-shift
// recursion; accuracy ~1e-14 relative.  Poles of Gamma raise DomainError.
std::complex<double> log_gamma(std::complex<double> z);

// Same algorithm in extended precision, for series with heavy cancellation.
std::complex<long double> log_gamma_ext(std::complex<long double> z);

// (-1)!! = 0!! = 1, n!! = n (n-2)!!.  n < -1 raises DomainError.
long long double_factorial(int n);

// e(x) = exp(2 pi i x)
std::complex<double> additive_character(double x);

// digamma at positive integers: psi(k) = -gamma + H_{k-1}
double digamma_int(int k);

// Scaled K-Bessel of imaginary order: e^{pi t/2} K_{it}(y).  The evaluator
// caches t-dependent gamma tables; construction costs ~200 log-gamma calls,
// evaluation is a short series or a small quadrature.
//
// Power series in the oscillatory range, real-axis cosh integral beyond the
// turning point, both in long double.  Relative accuracy ~1e-11 or better
// for t <= 40 and y in [t/1000, 10t+100].
class KBesselEvaluator {
public:
    explicit KBesselEvaluator(double t);

    double order() const { return t_; }

    // e^{pi t/2} K_{it}(y); y <= 0 raises DomainError.
    double scaled(double y) const;

private:
    double scaled_series(double y) const;
    double scaled_integral(double y) const;

    double t_ = 0.0;
    double y_switch_ = 0.0;
    long double log_prefactor_ = 0.0;      // log(2 pi e^{-pi t/2} / (1 - e^{-2 pi t})), t > 0
    std::vector<long double> re_lg_;       // Re log Gamma(k+1+it)
    std::vector<long double> im_lg_;       // Im log Gamma(k+1+it)
    std::vector<long double> log_fact_;    // log k!
    std::vector<long double> quad_c_;      // cosh u_i - 1 at integral nodes
    std::vector<long double> quad_w_;      // weights * cos(t u_i)
};

// One-shot convenience wrapper.
double k_bessel_imag(double t, double y);

}  // namespace hmf::specfun

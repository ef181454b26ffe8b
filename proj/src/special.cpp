#include "hmf/special.hpp"

#include "hmf/detail/gauss.hpp"

#include <algorithm>
#include <cmath>

namespace hmf::specfun {

namespace {

constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// Bernoulli numbers B_2 .. B_14 for the Stirling tail.
template <typename F>
constexpr F kBernoulli[] = {
    F(1) / F(6),     -F(1) / F(30),     F(1) / F(42), -F(1) / F(30),
    F(5) / F(66),    -F(691) / F(2730), F(7) / F(6),
};

template <typename F>
std::complex<F> log_gamma_impl(std::complex<F> z) {
    if (z.imag() == F(0) && z.real() <= F(0) &&
        z.real() == std::floor(z.real())) {
        throw DomainError("log_gamma: pole at nonpositive integer");
    }
    // Shift until Re z >= 10; each factor uses the principal log, which keeps
    // the recursion on the principal branch for Im z != 0 and for the
    // limit-from-above convention on the negative real axis.
    std::complex<F> shift(0, 0);
    int guard = 0;
    while (z.real() < F(10)) {
        shift += std::log(z);
        z += F(1);
        if (++guard > 100000) throw CapacityError("log_gamma: argument too far left");
    }
    const std::complex<F> zinv = F(1) / z;
    const std::complex<F> zinv2 = zinv * zinv;
    std::complex<F> tail(0, 0);
    std::complex<F> zpow = zinv;
    for (int j = 0; j < 7; ++j) {
        const int two_j = 2 * (j + 1);
        tail += kBernoulli<F>[j] / (F(two_j) * F(two_j - 1)) * zpow;
        zpow *= zinv2;
    }
    const F half_log_2pi = F(0.91893853320467274178032973640561764L);
    std::complex<F> result =
        (z - std::complex<F>(F(0.5), F(0))) * std::log(z) - z + half_log_2pi + tail;
    return result - shift;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    return log_gamma_impl<double>(z);
}

std::complex<long double> log_gamma_ext(std::complex<long double> z) {
    return log_gamma_impl<long double>(z);
}

long long double_factorial(int n) {
    if (n < -1) throw DomainError("double_factorial: n < -1");
    long long acc = 1;
    for (int k = n; k > 1; k -= 2) {
        acc *= k;
        if (acc < 0) throw CapacityError("double_factorial: overflow");
    }
    return acc;
}

std::complex<double> additive_character(double x) {
    // exp(2 pi i x); reduce mod 1 first so large x keep full phase accuracy
    double frac = x - std::floor(x);
    double arg = 2.0 * kPi * frac;
    return {std::cos(arg), std::sin(arg)};
}

double digamma_int(int k) {
    if (k < 1) throw DomainError("digamma_int: k < 1");
    double h = 0.0;
    for (int j = 1; j < k; ++j) h += 1.0 / j;
    return h - kEulerGamma;
}

KBesselEvaluator::KBesselEvaluator(double t) : t_(std::abs(t)) {
    if (!(t_ >= 0.0) || !std::isfinite(t_)) throw DomainError("KBesselEvaluator: bad order");
    y_switch_ = std::max(7.0, t_ + 4.0);
    const int kmax = static_cast<int>(y_switch_ / 2 + 12 * std::sqrt(y_switch_) + 48);
    re_lg_.resize(kmax + 1);
    im_lg_.resize(kmax + 1);
    log_fact_.resize(kmax + 1);
    const long double tl = static_cast<long double>(t_);
    long double lf = 0.0L;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) lf += std::log(static_cast<long double>(k));
        log_fact_[k] = lf;
        const auto lg = log_gamma_ext({static_cast<long double>(k + 1), tl});
        re_lg_[k] = lg.real();
        im_lg_[k] = lg.imag();
    }
    if (t_ > 0.0) {
        // 2 pi e^{-pi t/2} / (1 - e^{-2 pi t}) in log form
        log_prefactor_ = std::log(2.0L * kPiL) - kPiL * tl / 2.0L -
                         std::log(-std::expm1(-2.0L * kPiL * tl));
    }
    // quadrature for the integral branch, sized for its smallest argument
    const long double U = std::acosh(1.0L + 55.0L / static_cast<long double>(y_switch_));
    const int panels = std::max(6, static_cast<int>(U * (std::max(t_, 8.0) / 4.0)) + 4);
    quad_c_.reserve(panels * 20);
    quad_w_.reserve(panels * 20);
    for (int p = 0; p < panels; ++p) {
        const long double a = U * p / panels;
        const long double b = U * (p + 1) / panels;
        const long double half = (b - a) / 2.0L, mid = (a + b) / 2.0L;
        for (int i = 0; i < 20; ++i) {
            const long double u = mid + half * detail::kGaussX[i];
            quad_c_.push_back(std::cosh(u) - 1.0L);
            quad_w_.push_back(half * detail::kGaussW[i] * std::cos(tl * u));
        }
    }
}

double KBesselEvaluator::scaled(double y) const {
    if (!(y > 0.0)) throw DomainError("k_bessel_imag: y <= 0");
    return (y < y_switch_) ? scaled_series(y) : scaled_integral(y);
}

double KBesselEvaluator::scaled_series(double y) const {
    const long double yl = static_cast<long double>(y);
    const long double L = std::log(yl / 2.0L);
    const long double two_logy2 = 2.0L * L;
    const int kmax = static_cast<int>(re_lg_.size()) - 1;

    if (t_ == 0.0) {
        // K_0(y) = sum (y/2)^{2k} / (k!)^2 (psi(k+1) - log(y/2))
        long double sum = 0.0L, term_log = 0.0L, harmonic = 0.0L;
        for (int k = 0; k <= kmax; ++k) {
            if (k > 0) {
                term_log += two_logy2 - 2.0L * std::log(static_cast<long double>(k));
                harmonic += 1.0L / k;
            }
            const long double psi = harmonic - 0.57721566490153286060651209008240243L;
            const long double term = std::exp(term_log) * (psi - L);
            sum += term;
            if (k > y / 2 && std::abs(term) < 1e-26L * std::max(1.0L, std::abs(sum))) break;
        }
        return static_cast<double>(sum);
    }

    const long double tl = static_cast<long double>(t_);
    // log magnitude of term k is 2k log(y/2) - log k! - Re logGamma(k+1+it);
    // factor out the max to keep the sum in range.
    long double mstar = -1e30L;
    int klim = kmax;
    for (int k = 0; k <= kmax; ++k) {
        const long double lm = two_logy2 * k - log_fact_[k] - re_lg_[k];
        if (lm > mstar) mstar = lm;
        if (k > y / 2 + 8 && lm < mstar - 64.0L) {
            klim = k;
            break;
        }
    }
    long double sum = 0.0L;
    for (int k = 0; k <= klim; ++k) {
        const long double lm = two_logy2 * k - log_fact_[k] - re_lg_[k];
        sum += std::exp(lm - mstar) * std::sin(tl * L - im_lg_[k]);
    }
    const long double value = -std::exp(log_prefactor_ + mstar) * sum;
    return static_cast<double>(value);
}

double KBesselEvaluator::scaled_integral(double y) const {
    // e^{pi t/2 - y} * int_0^U e^{-y(cosh u - 1)} cos(t u) du.  The node set
    // is built once for the smallest y this branch serves; larger y only
    // shorten the effective support, so the early exit below keeps each
    // evaluation at the cost of the nodes that still matter.
    const long double yl = static_cast<long double>(y);
    const long double tl = static_cast<long double>(t_);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < quad_c_.size(); ++i) {
        const long double e = yl * quad_c_[i];
        if (e > 52.0L) break;  // nodes are sorted by cosh u - 1
        acc += quad_w_[i] * std::exp(-e);
    }
    const long double log_scale = kPiL * tl / 2.0L - yl;
    if (log_scale > -11300.0L) {
        return static_cast<double>(std::exp(log_scale) * acc);
    }
    return 0.0;
}

double k_bessel_imag(double t, double y) {
    return KBesselEvaluator(t).scaled(y);
}

}  // namespace hmf::specfun

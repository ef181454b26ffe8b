#include "hmf/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "hmf/special.hpp"

namespace hmf::arch {

namespace {

constexpr double kPi = specfun::kPi;
const double kLogPi = std::log(kPi);

// log |Gamma_R(1/2 + i s)| for real shift s
double log_gamma_r_half(double s) {
    return -0.25 * kLogPi + specfun::log_gamma({0.25, s / 2.0}).real();
}

// log |Gamma_R(1 + i s)|
double log_gamma_r_one(double s) {
    return -0.5 * kLogPi + specfun::log_gamma({0.5, s / 2.0}).real();
}

}  // namespace

double q_direct(double t_j, double t_f, double t_g) {
    const double h = t_j / 2.0;
    return std::abs(t_f + h) + std::abs(t_f - h) + std::abs(t_g + h) + std::abs(t_g - h) -
           2.0 * t_f - 2.0 * t_g;
}

double q_piecewise(double t_j, double t_f, double t_g) {
    if (t_f > t_g) throw DomainError("q_piecewise: requires t_f <= t_g");
    t_j = std::abs(t_j);
    if (t_j <= 2.0 * t_f) return 0.0;
    if (t_j <= 2.0 * t_g) return t_j - 2.0 * t_f;
    return 2.0 * t_j - 2.0 * t_f - 2.0 * t_g;
}

double q1_direct(double t_j, double t_f, double t_g, double t_k) {
    const double h = t_j / 2.0;
    return std::abs(h + t_f) + std::abs(h - t_f) + std::abs(t_j + t_g + t_k) / 2.0 +
           std::abs(t_j + t_g - t_k) / 2.0 + std::abs(t_j - t_g + t_k) / 2.0 +
           std::abs(t_j - t_g - t_k) / 2.0 - t_j - 2.0 * t_f - t_k - t_g;
}

double q1_piecewise(double t_j, double t_f, double t_g, double t_k) {
    if (t_j < 0.0 || t_k < 0.0 || !(t_f > 0.0) || !(t_g > 0.0)) {
        throw DomainError("q1_piecewise: needs t_j,t_k >= 0 and t_f,t_g > 0");
    }
    // the four (t_g, t_k)-terms of the direct form are symmetric under the
    // swap, and the case table presumes t_k <= t_g
    if (t_k > t_g) std::swap(t_g, t_k);
    const double tf2 = 2.0 * t_f, lo = t_g - t_k, hi = t_g + t_k;
    if (tf2 <= lo) {
        if (t_j <= tf2) return lo - t_j;
        if (t_j <= lo) return t_g - tf2 - t_k;
        if (t_j <= hi) return t_j - tf2;
        return 2.0 * t_j - tf2 - t_g - t_k;
    }
    if (tf2 <= hi) {
        if (t_j <= lo) return lo - t_j;
        if (t_j <= tf2) return 0.0;
        if (t_j <= hi) return t_j - tf2;
        return 2.0 * t_j - tf2 - t_g - t_k;
    }
    if (t_j <= lo) return lo - t_j;
    if (t_j <= hi) return 0.0;
    if (t_j <= tf2) return t_j - t_g - t_k;
    return 2.0 * t_j - tf2 - t_g - t_k;
}

LogScaleValue h_weight_log(double t_j, double t_f, double t_g) {
    if (!(t_j > 0.0)) throw DomainError("h_weight_log: t_j must be positive");
    // all factors come in conjugate pairs, so magnitudes suffice
    const double l_half_uj = 2.0 * log_gamma_r_half(t_j);
    auto l_half_sym2_cross = [&](double tf) {
        // shifts +-(2 tf + t_j), +-(2 tf - t_j), +- t_j, six Gamma_R factors
        return 2.0 * (log_gamma_r_half(2.0 * tf + t_j) + log_gamma_r_half(2.0 * tf - t_j) +
                      log_gamma_r_half(t_j));
    };
    auto l_one_sym2 = [&](double t) {
        // Gamma_R(1) = 1 times the conjugate pair at shift 2t
        return 2.0 * log_gamma_r_one(2.0 * t);
    };
    const double log_h = l_half_uj + 0.5 * l_half_sym2_cross(t_f) + 0.5 * l_half_sym2_cross(t_g) -
                         l_one_sym2(t_f) - l_one_sym2(t_g) - l_one_sym2(t_j);
    return LogScaleValue::from_log(log_h, +1);
}

LogScaleValue watson_envelope_f2g(double t_f, double t_g) {
    if (!(t_f > 0.0) || !(t_g > 0.0)) throw DomainError("watson_envelope_f2g: parameters must be positive");
    const double h = t_g / 2.0;
    const double exponent = std::abs(t_f + h) + std::abs(t_f - h) - 2.0 * t_f;
    const double log_env = -kPi / 2.0 * exponent - 0.5 * std::log(t_g) -
                           0.25 * std::log1p(std::abs(t_g + 2.0 * t_f)) -
                           0.25 * std::log1p(std::abs(t_g - 2.0 * t_f));
    return LogScaleValue::from_log(log_env, +1);
}

}  // namespace hmf::arch

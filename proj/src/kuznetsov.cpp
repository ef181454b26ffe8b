#include "hmf/kuznetsov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hmf/detail/gauss.hpp"
#include "hmf/special.hpp"
#include "hmf/util.hpp"

namespace hmf::kuznetsov {

namespace {

constexpr double kPi = specfun::kPi;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

// inverse of a mod m, or -1 when gcd(a, m) > 1
long long mod_inverse(long long a, long long m) {
    long long r0 = a % m, r1 = m;
    long long s0 = 1, s1 = 0;
    while (r1 != 0) {
        const long long q = r0 / r1;
        const long long r2 = r0 - q * r1;
        const long long s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) return -1;
    return s0 < 0 ? s0 + m : s0 % m;
}

// stable erf(a) - erf(b) for a >= b
double erf_difference(double a, double b) {
    if (b >= 0.0) return std::erfc(b) - std::erfc(a);
    if (a <= 0.0) return std::erfc(-a) - std::erfc(-b);
    return std::erf(a) - std::erf(b);
}

}  // namespace

void SpectralWindow::validate() const {
    if (!(X > 0.0) || !(Y > 0.0) || Y > X) {
        throw DomainError("SpectralWindow: requires 0 < Y <= X");
    }
    const double cap = Y / std::log(std::max(X, 1.0000001));
    if (M < 1.0 || M > cap) {
        throw DomainError("SpectralWindow: requires 1 <= M <= Y/log X");
    }
}

double kloosterman(long long a, long long b, long long c) {
    if (c < 1) throw DomainError("kloosterman: modulus must be >= 1");
    if (c == 1) return 1.0;  // empty modulus, single term e(0)
    long double re = 0.0L, im = 0.0L;
    const long long am = ((a % c) + c) % c;
    const long long bm = ((b % c) + c) % c;
    for (long long d = 1; d < c; ++d) {
        const long long dinv = mod_inverse(d, c);
        if (dinv < 0) continue;
        const long long num = (am * d + bm * dinv) % c;
        const long double arg = 2.0L * kPiL * static_cast<long double>(num) / c;
        re += std::cos(arg);
        im += std::sin(arg);
    }
    if (std::abs(static_cast<double>(im)) > 1e-9 * std::max(1.0, std::abs(static_cast<double>(re)))) {
        throw NumericalError("kloosterman: imaginary part failed to cancel");
    }
    return static_cast<double>(re);
}

double h_test(double t, double T, double M) {
    if (!(M > 0.0)) throw DomainError("h_test: M must be positive");
    const double u = (t - T) / M, v = (t + T) / M;
    return std::exp(-u * u) + std::exp(-v * v);
}

double phi_weight(double t, const SpectralWindow& w) {
    w.validate();
    const double a = (t - w.X) / w.M, b = (t - w.X - w.Y) / w.M;
    const double c = (t + w.X + w.Y) / w.M, d = (t + w.X) / w.M;
    return 0.5 * (erf_difference(a, b) + erf_difference(c, d));
}

std::complex<double> zeta_em(std::complex<double> s) {
    if (std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-12) {
        throw DomainError("zeta_em: pole at s = 1");
    }
    const int N = std::max(16, static_cast<int>(std::abs(s.imag())) + 12);
    std::complex<double> sum(0.0, 0.0);
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
    const double logN = std::log(static_cast<double>(N));
    sum += std::exp((1.0 - s) * logN) / (s - 1.0);
    sum += 0.5 * std::exp(-s * logN);
    // Bernoulli tail: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    const double bern[] = {1.0 / 6.0,  -1.0 / 30.0,      1.0 / 42.0, -1.0 / 30.0,
                           5.0 / 66.0, -691.0 / 2730.0,  7.0 / 6.0,  -3617.0 / 510.0};
    std::complex<double> running = s;                          // s(s+1)...(s+2k-2)
    double fact = 2.0;                                         // (2k)!
    std::complex<double> npow = std::exp((-s - 1.0) * logN);   // N^{-s-2k+1}
    const double n2 = std::exp(-2.0 * logN);
    for (int k = 1; k <= 8; ++k) {
        sum += bern[k - 1] / fact * running * npow;
        running *= (s + std::complex<double>(2.0 * k - 1.0, 0.0)) *
                   (s + std::complex<double>(2.0 * k, 0.0));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow *= n2;
    }
    return sum;
}

std::complex<double> zeta_one_line(double t) {
    if (std::abs(t) <= 0.01) {
        throw DomainError("zeta_one_line: too close to the pole; use continuous_weight");
    }
    return zeta_em({1.0, 2.0 * t});
}

double continuous_weight(double t) {
    const double at = std::abs(t);
    if (at < 0.02) {
        // 1/|zeta(1+2it)|^2 = 4t^2 (1 - (4 gamma^2 + 8 gamma_1) t^2 + O(t^4))
        return 4.0 * t * t * (1.0 - 0.750434003256 * t * t);
    }
    const std::complex<double> z = zeta_one_line(at);
    return 1.0 / std::norm(z);
}

double divisor_phase_sum(int n, double t) {
    if (n < 1) throw DomainError("divisor_phase_sum: n must be >= 1");
    double sum = 0.0;
    for (int a = 1; a * a <= n; ++a) {
        if (n % a) continue;
        const int d = n / a;
        if (a == d) {
            sum += 1.0;
        } else {
            sum += 2.0 * std::cos(2.0 * t * std::log(static_cast<double>(a) / d));
        }
    }
    return sum;
}

namespace {

// Im J_{2it}(x) by the ascending series with cached logGamma(2it+k+1);
// err_out receives the estimated absolute rounding error.
long double im_j_series(double x, double t, const std::vector<long double>& re_lg,
                        const std::vector<long double>& im_lg, long double* err_out) {
    const long double L = std::log(static_cast<long double>(x) / 2.0L);
    const long double tl = t;
    const int kmax = static_cast<int>(re_lg.size()) - 1;
    long double lfact = 0.0L;
    long double mstar = -1e30L;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) lfact += std::log(static_cast<long double>(k));
        const long double lm = 2.0L * L * k - lfact - re_lg[k];
        if (lm > mstar) mstar = lm;
        if (k > x / 2 + 6 && lm < mstar - 72.0L) break;
    }
    long double sum = 0.0L, asum = 0.0L;
    lfact = 0.0L;
    int sign = 1;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0) lfact += std::log(static_cast<long double>(k));
        const long double lm = 2.0L * L * k - lfact - re_lg[k];
        if (lm >= mstar - 76.0L) {
            const long double mag = std::exp(lm - mstar);
            sum += sign * mag * std::sin(2.0L * tl * L - im_lg[k]);
            asum += mag;
        } else if (k > x / 2 + 6) {
            break;
        }
        sign = -sign;
    }
    if (err_out) *err_out = 6e-19L * asum * std::exp(mstar);
    return std::exp(mstar) * sum;
}

int j_series_kmax(double x_max) {
    return static_cast<int>(x_max / 2.0 + 14.0 * std::sqrt(x_max / 2.0 + 1.0) + 28.0);
}

void fill_lgamma_tables(double t, int kmax, std::vector<long double>& re_lg,
                        std::vector<long double>& im_lg) {
    re_lg.resize(kmax + 1);
    im_lg.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        const auto lg = specfun::log_gamma_ext(
            {static_cast<long double>(k + 1), 2.0L * static_cast<long double>(t)});
        re_lg[k] = lg.real();
        im_lg[k] = lg.imag();
    }
}

// Im J_{2it}(x) from the Schlaefli-type representation; stable for small t.
long double im_j_integral(double x, double t) {
    // (1/pi) int_0^pi sin(x sin th) sinh(2 t th) dth
    //   - (sinh(2 pi t)/pi) int_0^inf e^{-x sinh u} cos(2 t u) du
    const int panels1 = std::max(12, static_cast<int>(x / 2.0) + 8);
    const double first =
        detail::panel_integrate(0.0, kPi, panels1, [&](double th) {
            return std::sin(x * std::sin(th)) * std::sinh(2.0 * t * th);
        });
    const double U = std::asinh(60.0 / x) + 1.0;
    const int panels2 = std::max(8, static_cast<int>(U * (std::abs(t) + 4.0) / 2.0));
    const double second =
        detail::panel_integrate(0.0, U, panels2, [&](double u) {
            return std::exp(-x * std::sinh(u)) * std::cos(2.0 * t * u);
        });
    return (first - std::sinh(2.0 * kPi * t) * second) / kPi;
}

struct JNodeEval {
    long double value = 0.0L;  // Im J_{2it}(x)
    long double err = 0.0L;
};

JNodeEval im_j_auto(double x, double t, const std::vector<long double>& re_lg,
                    const std::vector<long double>& im_lg) {
    JNodeEval out;
    if (x <= 30.0 || t >= x * x / 224.0) {
        out.value = im_j_series(x, t, re_lg, im_lg, &out.err);
        return out;
    }
    if (t <= 4.0) {
        out.value = im_j_integral(x, t);
        out.err = 2e-17L * std::exp(2.0L * kPiL * static_cast<long double>(t)) *
                  (1.0L + static_cast<long double>(x));
        return out;
    }
    // gap region: take the series value but carry its loss-of-precision
    // estimate so the caller can decide whether accuracy survived
    out.value = im_j_series(x, t, re_lg, im_lg, &out.err);
    return out;
}

}  // namespace

double bessel_transform(double x, double T, double M) {
    if (!(x > 0.0)) throw DomainError("bessel_transform: x must be positive");
    if (!(M > 0.0) || !(T > 0.0)) throw DomainError("bessel_transform: T, M must be positive");
    const double t_hi = T + 12.0 * M;
    const int kmax = j_series_kmax(x);
    const int panels = std::max(10, static_cast<int>(t_hi / std::min(M, 2.0) * 1.5) + 4);
    long double acc = 0.0L, err = 0.0L;
    std::vector<long double> re_lg, im_lg;
    for (int p = 0; p < panels; ++p) {
        const double a = t_hi * p / panels, b = t_hi * (p + 1) / panels;
        const double half = (b - a) / 2.0, mid = (a + b) / 2.0;
        for (int i = 0; i < detail::kGaussN; ++i) {
            const double t = mid + half * static_cast<double>(detail::kGaussX[i]);
            const double wq = half * static_cast<double>(detail::kGaussW[i]);
            fill_lgamma_tables(t, kmax, re_lg, im_lg);
            const auto j = im_j_auto(x, t, re_lg, im_lg);
            const long double fac =
                -4.0L * wq * t * h_test(t, T, M) / std::cosh(kPiL * static_cast<long double>(t));
            acc += fac * j.value;
            err += std::abs(fac) * j.err;
        }
    }
    const double value = static_cast<double>(acc);
    const double estimate = static_cast<double>(err);
    if (estimate > 1e-6 * std::max(std::abs(value), 1e-3)) {
        std::ostringstream msg;
        msg << "bessel_transform: achieved error estimate " << estimate
            << " exceeds target for x=" << x;
        throw NumericalError(msg.str());
    }
    return value;
}

PhiBesselTransform::PhiBesselTransform(const SpectralWindow& w) {
    w.validate();
    t_hi_ = w.X + w.Y + 12.0 * w.M;
    const int kmax = j_series_kmax(4.0 * kPi * 4.0 + 10.0);  // covers x up to 4 pi sqrt(nm), nm <= 16
    const int panels = std::max(12, static_cast<int>(t_hi_ / std::min(w.M, 2.0) * 1.5) + 4);
    nodes_.reserve(panels * detail::kGaussN);
    for (int p = 0; p < panels; ++p) {
        const double a = t_hi_ * p / panels, b = t_hi_ * (p + 1) / panels;
        const double half = (b - a) / 2.0, mid = (a + b) / 2.0;
        for (int i = 0; i < detail::kGaussN; ++i) {
            Node node;
            node.t = mid + half * static_cast<double>(detail::kGaussX[i]);
            const double wq = half * static_cast<double>(detail::kGaussW[i]);
            const double phi = phi_weight(node.t, w);
            node.factor = -4.0 * wq * node.t * phi /
                          static_cast<double>(std::cosh(kPiL * static_cast<long double>(node.t)));
            if (std::abs(node.factor) > 0.0) {
                fill_lgamma_tables(node.t, kmax, node.re_lg, node.im_lg);
                nodes_.push_back(std::move(node));
            }
        }
    }
}

double PhiBesselTransform::operator()(double x) const {
    if (!(x > 0.0)) throw DomainError("PhiBesselTransform: x must be positive");
    long double acc = 0.0L, err = 0.0L;
    for (const auto& node : nodes_) {
        const auto j = im_j_auto(x, node.t, node.re_lg, node.im_lg);
        acc += static_cast<long double>(node.factor) * j.value;
        err += std::abs(static_cast<long double>(node.factor)) * j.err;
    }
    const double value = static_cast<double>(acc);
    if (static_cast<double>(err) > 1e-6 * std::max(std::abs(value), 1e-3)) {
        std::ostringstream msg;
        msg << "PhiBesselTransform: accuracy lost at x=" << x << " (estimate "
            << static_cast<double>(err) << ")";
        throw NumericalError(msg.str());
    }
    return value;
}

double g_main_term(const SpectralWindow& w) {
    return (2.0 / kPi) * w.X * w.Y + (1.0 / kPi) * w.Y * w.Y;
}

double diagonal_term(const SpectralWindow& w) {
    w.validate();
    // inner integral over the full line folds to [0, inf) by evenness
    auto inner = [&](double T) {
        const double lo1 = 0.0, hi1 = std::max(4.0, 12.0 * w.M - T + 4.0);
        const double lo2 = std::max(hi1, T - 12.0 * w.M), hi2 = T + 12.0 * w.M;
        auto f = [&](double t) {
            return h_test(t, T, w.M) * std::tanh(kPi * t) * t;
        };
        double v = detail::panel_integrate(lo1, hi1, std::max(4, static_cast<int>(hi1)), f);
        if (hi2 > lo2) {
            v += detail::panel_integrate(lo2, hi2, std::max(10, static_cast<int>((hi2 - lo2) / w.M * 2)), f);
        }
        return 2.0 * v;
    };
    const int outer_panels = std::max(6, static_cast<int>(w.Y));
    const double total = detail::panel_integrate(w.X, w.X + w.Y, outer_panels, inner);
    return total / (std::pow(kPi, 1.5) * w.M);
}

double spectral_average(int n, const SpectralWindow& w, const SpectrumSlice& forms) {
    w.validate();
    if (forms.t.empty()) throw DomainError("spectral_average: empty spectrum slice");
    if (forms.weight.size() != forms.t.size() || forms.lam_n.size() != forms.t.size()) {
        throw DomainError("spectral_average: ragged spectrum slice");
    }
    (void)n;
    double acc = 0.0;
    for (std::size_t j = 0; j < forms.t.size(); ++j) {
        acc += forms.weight[j] * forms.lam_n[j] * phi_weight(forms.t[j], w);
    }
    return acc;
}

namespace {

std::string completeness_note(const SpectralWindow& w, const SpectrumSlice& forms) {
    std::ostringstream os;
    const double lo_eff = std::max(0.0, w.X - 6.0 * w.M);
    const double hi_eff = w.X + w.Y + 6.0 * w.M;
    std::vector<double> ts = forms.t;
    std::sort(ts.begin(), ts.end());
    os << "Phi-effective window [" << lo_eff << ", " << hi_eff << "]; " << ts.size()
       << " forms supplied";
    if (ts.empty()) {
        os << "; no discrete spectrum provided, cusp term is zero";
        return os.str();
    }
    os << " covering [" << ts.front() << ", " << ts.back() << "]";
    // the first eigenvalue of the modular surface is near 9.53; a gap matters
    // only inside the effective window
    double worst_gap = 0.0, gap_at = 0.0;
    double prev = std::max(lo_eff, 9.0);
    for (double tj : ts) {
        if (tj < lo_eff || tj > hi_eff) continue;
        if (tj - prev > worst_gap) {
            worst_gap = tj - prev;
            gap_at = prev;
        }
        prev = tj;
    }
    if (hi_eff - prev > worst_gap && prev < hi_eff) {
        worst_gap = hi_eff - prev;
        gap_at = prev;
    }
    if (worst_gap > 3.0) {
        os << "; WARNING: spectral gap of length " << worst_gap << " starting near t=" << gap_at;
    } else {
        os << "; no suspicious spectral gaps";
    }
    return os.str();
}

}  // namespace

TraceReport trace_check(int n, int m, const SpectralWindow& w, const SpectrumSlice& forms,
                        int c_max) {
    w.validate();
    if (n < 1 || m < 1) throw DomainError("trace_check: n, m must be >= 1");
    if (c_max < 1) throw DomainError("trace_check: c_max must be >= 1");
    TraceReport rep;

    for (std::size_t j = 0; j < forms.t.size(); ++j) {
        rep.spectral_cusp +=
            forms.weight[j] * forms.lam_n[j] * forms.lam_m[j] * phi_weight(forms.t[j], w);
    }

    // continuous spectrum: even integrand, folded to t >= 0
    const double hi = w.X + w.Y + 14.0 * w.M;
    rep.spectral_continuous =
        2.0 * detail::panel_integrate(0.0, hi, std::max(16, static_cast<int>(hi / w.M * 2)),
                                      [&](double t) {
                                          return continuous_weight(t) * phi_weight(t, w) *
                                                 divisor_phase_sum(n, t) * divisor_phase_sum(m, t);
                                      });

    rep.geometric_diagonal = (n == m) ? diagonal_term(w) : 0.0;

    PhiBesselTransform transform(w);
    const double xbase = 4.0 * kPi * std::sqrt(static_cast<double>(n) * m);
    for (int c = 1; c <= c_max; ++c) {
        const double s = kloosterman(n, m, c);
        if (s != 0.0) rep.geometric_kloosterman += s / c * transform(xbase / c);
    }
    // Weil-bound tail: sum_{c > c_max} tau(c) c^{-3/2} |J|-envelope with the
    // uniform T x^{3/4} shape aggregated over the window
    const double envelope_const = 2.0 * (w.X + w.Y) * w.Y / (w.M * std::sqrt(kPi));
    double tail = 0.0;
    for (int c = c_max + 1; c <= 40 * c_max; ++c) {
        tail += util::divisor_count(c) / std::pow(static_cast<double>(c), 1.5) *
                envelope_const * std::pow(xbase / c, 0.75);
    }
    tail += envelope_const * std::pow(xbase, 0.75) * 4.0 *
            std::pow(40.0 * c_max, -1.25) * std::log(40.0 * c_max + 1.0);
    rep.kloosterman_tail_estimate = tail;

    rep.mismatch = (rep.spectral_cusp + rep.spectral_continuous) -
                   (rep.geometric_diagonal + rep.geometric_kloosterman);
    rep.spectrum_completeness_note = completeness_note(w, forms);
    return rep;
}

}  // namespace hmf::kuznetsov

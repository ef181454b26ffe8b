#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hmf/errors.hpp"

namespace hmf::kuznetsov {

// Averaging window (X, Y, M) with the standing constraints
// 0 < Y <= X and 1 <= M <= Y / log X.
struct SpectralWindow {
    double X = 10.0;
    double Y = 4.0;
    double M = 1.5;

    void validate() const;
};

// Discrete-spectrum data the trace harness consumes: spectral parameters,
// harmonic weights 2 pi / L(1, sym^2 u_j), and Hecke eigenvalues at the two
// indices of the identity under test.
struct SpectrumSlice {
    std::vector<double> t;
    std::vector<double> weight;
    std::vector<double> lam_n;
    std::vector<double> lam_m;
};

struct TraceReport {
    double spectral_cusp = 0.0;
    double spectral_continuous = 0.0;
    double geometric_diagonal = 0.0;
    double geometric_kloosterman = 0.0;
    double kloosterman_tail_estimate = 0.0;
    double mismatch = 0.0;
    std::string spectrum_completeness_note;
};

// S(a,b;c) = sum over units d mod c of e((a d + b dbar)/c); exact real value.
double kloosterman(long long a, long long b, long long c);

// h(t,T,M) = exp(-((t-T)/M)^2) + exp(-((t+T)/M)^2)
double h_test(double t, double T, double M);

// Phi_{X,Y,M}(t) = (1/sqrt(pi) M) int_X^{X+Y} h(t,T,M) dT, in closed form.
double phi_weight(double t, const SpectralWindow& w);

// zeta(1+2it) by Euler-Maclaurin; |t| <= 0.01 raises DomainError.
std::complex<double> zeta_one_line(double t);

// Euler-Maclaurin zeta for general s off the pole (used for completed-zeta
// ratios elsewhere).
std::complex<double> zeta_em(std::complex<double> s);

// 1/|zeta(1+2it)|^2 extended continuously by 0 across t = 0.
double continuous_weight(double t);

// eta_t(n) = sum_{ad=n} (a/d)^{2it}
double divisor_phase_sum(int n, double t);

// J-Bessel transform 2i int J_{2it}(x) h(t,T,M) t / cosh(pi t) dt.
double bessel_transform(double x, double T, double M);

// Same transform against Phi_{X,Y,M}; caches the t-nodes and gamma tables
// so the Kloosterman c-sum can reuse them.
class PhiBesselTransform {
public:
    explicit PhiBesselTransform(const SpectralWindow& w);
    double operator()(double x) const;

private:
    struct Node {
        double t;
        double factor;  // quadrature weight * (-4) * t / cosh(pi t) * Phi(t)
        std::vector<long double> re_lg;  // Re logGamma(2it + k + 1)
        std::vector<long double> im_lg;
    };
    std::vector<Node> nodes_;
    double t_hi_ = 0.0;
};

// (1/(pi^{3/2} M)) int_X^{X+Y} int_R h(t,T,M) tanh(pi t) t dt dT
double diagonal_term(const SpectralWindow& w);

// Main term (2/pi) X Y + (1/pi) Y^2 of the diagonal.
double g_main_term(const SpectralWindow& w);

// Sum of w_j lam_j(n) Phi(t_j) over the slice.
double spectral_average(int n, const SpectralWindow& w, const SpectrumSlice& forms);

TraceReport trace_check(int n, int m, const SpectralWindow& w, const SpectrumSlice& forms,
                        int c_max);

}  // namespace hmf::kuznetsov

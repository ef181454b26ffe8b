#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "hmf/domain.hpp"
#include "hmf/errors.hpp"
#include "hmf/kuznetsov.hpp"
#include "hmf/special.hpp"

namespace hmf::automorphic {

enum class Parity { Even, Odd };
enum class Normalization { Hecke, L2 };

const char* to_string(Parity p);

// Hecke-Maass cusp form for the modular group.  Coefficients are stored in
// the eigenvalue normalization: a(1) = 1 and a(m)a(n) = sum_{d|(m,n)} a(mn/d^2)
// under Normalization::Hecke; L2 normalization rescales all of them by one
// positive scalar.
struct MaassForm {
    Parity parity = Parity::Even;
    double t = 0.0;  // Laplace eigenvalue 1/4 + t^2
    std::vector<double> coeff;  // coeff[n-1] = a(n)
    Normalization normalization = Normalization::Hecke;
    double certified_error = 0.0;

    int n_max() const { return static_cast<int>(coeff.size()); }
    double a(int n) const;
};

struct SolveOptions {
    int n_coeffs = 0;     // stored coefficient budget; 0 = default formula
    int truncation = 22;  // collocation truncation of the primary set
    double scan_step = 0.01;
    bool refine_truncation = true;  // re-solve at truncation+10 and compare
};

// Locate and solve the unique form of the given parity in the window, or
// throw DomainError when the window contains none.
MaassForm solve_maass(Parity parity, double t_lo, double t_hi, const SolveOptions& opts = {});

// All forms of the given parity with t in [t_lo, t_hi].
std::vector<MaassForm> scan_spectrum(Parity parity, double t_lo, double t_hi,
                                     const SolveOptions& opts = {});

// Multiplicative extension from stored prime data.
double hecke_eigenvalue(const MaassForm& form, long long n);

// Fourier-series evaluation with a cached Bessel table.
class FormEvaluator {
public:
    explicit FormEvaluator(const MaassForm& form);

    // series at the given point, no reduction (pre: y large enough for the
    // stored budget, else CapacityError)
    double value_at(const domain::HalfPlanePoint& z) const;

    // reduce first, then evaluate
    double value(const domain::HalfPlanePoint& z) const;

    const MaassForm& form() const { return form_; }

private:
    MaassForm form_;
    specfun::KBesselEvaluator kb_;
};

double evaluate_form(const MaassForm& form, const domain::HalfPlanePoint& z);

// Real-valued unitary Eisenstein evaluator at spectral point 1/2 + it: the
// standard series multiplied by the unimodular phase that makes the constant
// term 2 sqrt(y) cos(t log y + arg xi(1+2it)).
class EisensteinEvaluator {
public:
    explicit EisensteinEvaluator(double t, int truncation = 64);

    double value_at(const domain::HalfPlanePoint& z) const;
    double value(const domain::HalfPlanePoint& z) const;

    double t() const { return t_; }
    // scattering coefficient phi(1/2+it) = xi(1-2it)/xi(1+2it)
    std::complex<double> scattering() const;

private:
    double t_ = 0.0;
    int truncation_ = 64;
    specfun::KBesselEvaluator kb_;
    double arg_xi_ = 0.0;        // arg xi(1+2it)
    double log_coeff_ = 0.0;     // log(4 e^{-pi t/2} / |xi(1+2it)|)
    std::vector<double> eta_;    // divisor sums of the Fourier coefficients
};

// Rescale so that (1/vol) int |f|^2 dmu = 1 on the supplied grid.
MaassForm l2_normalize(const MaassForm& form, const domain::QuadratureGrid& grid);

// L(1, sym^2 f) from the Petersson norm of the Hecke-normalized form:
// the Rankin-Selberg unfolding gives L = 4 (1 + e^{-2 pi t}) <f, f>.
double l_sym2_from_norm(const MaassForm& form, const domain::QuadratureGrid& grid);

// Partial Euler product over p <= p_max from stored eigenvalues; the
// logarithmic tail estimate is returned through tail_log if non-null.
double l_sym2_euler(const MaassForm& form, int p_max, double* tail_log = nullptr);

// Assemble the trace-harness input from solved forms: weights
// 2 pi / L(1, sym^2 u_j) and Hecke eigenvalues at n and m.
kuznetsov::SpectrumSlice make_spectrum_slice(const std::vector<MaassForm>& forms,
                                             const domain::QuadratureGrid& grid, int n, int m);

// Versioned text cache, deterministic round-trip.
void write_form(const std::string& path, const MaassForm& form);
MaassForm read_form(const std::string& path);

// Default stored-coefficient budget for a form with parameter t evaluated
// down to the default cusp height.
int default_coefficient_budget(double t);

// Default cusp cutoff 8 + t/pi.
double default_y_cutoff(double t);

}  // namespace hmf::automorphic

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmf/automorphic.hpp"
#include "hmf/domain.hpp"
#include "hmf/errors.hpp"

namespace hmf::moments {

// Test function for a moment: a smooth bump or the constant 1.
class ObservableSpec {
public:
    static ObservableSpec constant_one() { return ObservableSpec{}; }
    static ObservableSpec bump(domain::Observable obs) {
        ObservableSpec s;
        s.bump_ = std::move(obs);
        return s;
    }

    bool is_constant() const { return !bump_.has_value(); }
    double operator()(const domain::HalfPlanePoint& z) const {
        return bump_ ? (*bump_)(z) : 1.0;
    }

private:
    std::optional<domain::Observable> bump_;
};

struct MomentSpec {
    std::vector<std::pair<automorphic::MaassForm, int>> factors;  // (form, power >= 1)
    ObservableSpec observable = ObservableSpec::constant_one();
    const domain::QuadratureGrid* grid = nullptr;
};

struct MomentResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Standard Gaussian moment E X^n: (n-1)!! for even n, 0 for odd.
double gaussian_moment(int n);

MomentResult joint_moment(const MomentSpec& spec);

struct IndependenceReport {
    double t_f = 0.0, t_g = 0.0;
    int a = 0, b = 0;
    double measured = 0.0;
    double conjectured = 0.0;
    double difference = 0.0;
    double error_estimate = 0.0;
};

// Measured int psi f^a g^b dmu against the product-moment prediction
// c_a c_b int psi; no verdict is attached, the prediction is asymptotic.
IndependenceReport independence_report(const automorphic::MaassForm& f,
                                       const automorphic::MaassForm& g, int a, int b,
                                       const ObservableSpec& observable,
                                       const domain::QuadratureGrid& grid);

struct ParsevalReport {
    double direct_value = 0.0;
    double constant_term = 0.0;
    double cusp_sum = 0.0;
    double eisenstein_integral = 0.0;
    double cutoff = 0.0;
    double residual = 0.0;
    double error_budget = 0.0;
    std::string notes;
    std::vector<std::pair<double, double>> cusp_terms;  // (t_j, contribution)
};

// Spectral decomposition cross-check of <f^2, g^2>: constant term, cusp sum
// over the supplied basis, and the truncated Eisenstein integral, all by
// quadrature on one fixed grid.
ParsevalReport parseval_check(const automorphic::MaassForm& f, const automorphic::MaassForm& g,
                              const std::vector<automorphic::MaassForm>& basis,
                              const domain::QuadratureGrid& grid, double eisen_spacing = 0.25,
                              double eisen_t_max = 0.0 /* 0 = 2 max(t_f, t_g) */);

struct DecayReport {
    std::vector<double> t;
    std::vector<double> coefficient;  // <psi, u_j>
    std::vector<double> error;
    double fitted_exponent = 0.0;  // slope of log |coef| against log t
};

DecayReport observable_spectral_decay(const ObservableSpec& observable,
                                      const std::vector<automorphic::MaassForm>& basis,
                                      const domain::QuadratureGrid& grid);

}  // namespace hmf::moments

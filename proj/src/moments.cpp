#include "hmf/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hmf/special.hpp"
#include "hmf/util.hpp"

namespace hmf::moments {

namespace {

constexpr double kPi = specfun::kPi;

using automorphic::FormEvaluator;
using automorphic::MaassForm;
using domain::HalfPlanePoint;
using domain::QuadratureGrid;

std::vector<double> values_on_grid(const MaassForm& form, const QuadratureGrid& grid) {
    FormEvaluator ev(form);
    std::vector<double> out(grid.nodes.size());
    const int threads = util::default_threads();
    util::parallel_sum(grid.nodes.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = ev.value_at(grid.nodes[i]);
        return 0.0;
    });
    return out;
}

std::vector<double> values_on_grid(const automorphic::EisensteinEvaluator& ev,
                                   const QuadratureGrid& grid) {
    std::vector<double> out(grid.nodes.size());
    const int threads = util::default_threads();
    util::parallel_sum(grid.nodes.size(), threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = ev.value_at(grid.nodes[i]);
        return 0.0;
    });
    return out;
}

// deterministic ordered dot product of weights with a product of node arrays
double weighted_sum(const QuadratureGrid& grid, const std::vector<const std::vector<double>*>& vs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        double g = grid.weights[i];
        for (const auto* v : vs) g *= (*v)[i];
        acc += g;
    }
    return acc;
}

}  // namespace

double gaussian_moment(int n) {
    if (n < 0) throw DomainError("gaussian_moment: n must be >= 0");
    if (n % 2 == 1) return 0.0;
    return static_cast<double>(specfun::double_factorial(n - 1));
}

MomentResult joint_moment(const MomentSpec& spec) {
    if (spec.grid == nullptr) throw DomainError("joint_moment: no grid supplied");
    const QuadratureGrid& grid = *spec.grid;
    if (spec.factors.empty()) throw DomainError("joint_moment: no factors");
    double t_max = 0.0;
    for (const auto& [form, power] : spec.factors) {
        if (power < 1) throw DomainError("joint_moment: powers must be >= 1");
        t_max = std::max(t_max, form.t);
    }
    if (grid.max_spacing >= 1.0 / (4.0 * t_max)) {
        throw CapacityError("joint_moment: grid spacing too coarse for the highest factor");
    }
    // cache factor values once per distinct form
    std::vector<std::vector<double>> values;
    values.reserve(spec.factors.size());
    for (const auto& [form, power] : spec.factors) values.push_back(values_on_grid(form, grid));

    const std::size_t n = grid.nodes.size();
    double a_inf = 0.0;
    double value = 0.0, a_one = 0.0;
    // ordered accumulation independent of the thread count happens inside
    // parallel_sum; the abs accumulation reuses the same chunking
    const int threads = util::default_threads();
    std::vector<double> integrand(n);
    util::parallel_sum(n, threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double g = spec.observable(grid.nodes[i]);
            for (std::size_t k = 0; k < values.size(); ++k) {
                const int p = spec.factors[k].second;
                for (int e = 0; e < p; ++e) g *= values[k][i];
            }
            integrand[i] = g;
        }
        return 0.0;
    });
    for (std::size_t i = 0; i < n; ++i) {
        const double wg = grid.weights[i] * integrand[i];
        value += wg;
        a_one += std::abs(wg);
        a_inf = std::max(a_inf, std::abs(integrand[i]));
    }
    double cert_sum = 0.0;
    for (const auto& [form, power] : spec.factors) {
        cert_sum += power * form.certified_error;
    }
    MomentResult r;
    r.value = value;
    r.error_estimate = 4.0 * grid.estimated_error * std::max(1.0, a_inf) +
                       3.0 * cert_sum * std::max(a_one, grid.volume());
    return r;
}

IndependenceReport independence_report(const MaassForm& f, const MaassForm& g, int a, int b,
                                       const ObservableSpec& observable,
                                       const QuadratureGrid& grid) {
    if (f.t == g.t && f.parity == g.parity) {
        throw DomainError("independence_report: needs two distinct forms");
    }
    MomentSpec spec;
    spec.factors = {{f, a}, {g, b}};
    spec.observable = observable;
    spec.grid = &grid;
    const auto measured = joint_moment(spec);
    const double psi_mass =
        observable.is_constant()
            ? grid.volume()
            : grid.integrate([&](const HalfPlanePoint& z) { return observable(z); });
    IndependenceReport rep;
    rep.t_f = f.t;
    rep.t_g = g.t;
    rep.a = a;
    rep.b = b;
    rep.measured = measured.value;
    rep.conjectured = gaussian_moment(a) * gaussian_moment(b) * psi_mass;
    rep.difference = rep.measured - rep.conjectured;
    rep.error_estimate = measured.error_estimate;
    return rep;
}

ParsevalReport parseval_check(const MaassForm& f, const MaassForm& g,
                              const std::vector<MaassForm>& basis, const QuadratureGrid& grid,
                              double eisen_spacing, double eisen_t_max) {
    if (f.t == g.t && f.parity == g.parity) {
        throw DomainError("parseval_check: needs two distinct forms");
    }
    ParsevalReport rep;
    const double t_e = eisen_t_max > 0.0 ? eisen_t_max : 2.0 * std::max(f.t, g.t);
    rep.cutoff = 0.0;
    for (const auto& u : basis) rep.cutoff = std::max(rep.cutoff, u.t);

    const auto fv = values_on_grid(f, grid);
    const auto gv = values_on_grid(g, grid);
    std::vector<double> f2(fv.size()), g2(gv.size());
    for (std::size_t i = 0; i < fv.size(); ++i) {
        f2[i] = fv[i] * fv[i];
        g2[i] = gv[i] * gv[i];
    }
    rep.direct_value = weighted_sum(grid, {&f2, &g2});
    const double f2_mass = weighted_sum(grid, {&f2});
    const double g2_mass = weighted_sum(grid, {&g2});
    rep.constant_term = 3.0 / kPi * f2_mass * g2_mass;

    for (const auto& u : basis) {
        const auto uv = values_on_grid(u, grid);
        const double cf = weighted_sum(grid, {&f2, &uv});
        const double cg = weighted_sum(grid, {&uv, &g2});
        rep.cusp_sum += cf * cg;
        rep.cusp_terms.emplace_back(u.t, cf * cg);
    }

    // Eisenstein part: the integrand is even in t and the evaluator is real,
    // so (1/4 pi) int_R = (1/2 pi) int_0^T by trapezoid
    double eisen = 0.0;
    const int steps = static_cast<int>(std::ceil(t_e / eisen_spacing));
    double prev = 0.0;  // t = 0: the normalized evaluator vanishes
    for (int k = 1; k <= steps; ++k) {
        const double t = t_e * k / steps;
        automorphic::EisensteinEvaluator ev(t, 96);
        const auto evv = values_on_grid(ev, grid);
        const double cur = weighted_sum(grid, {&f2, &evv}) * weighted_sum(grid, {&evv, &g2});
        eisen += 0.5 * (prev + cur) * (t_e / steps);
        prev = cur;
    }
    rep.eisenstein_integral = eisen / (2.0 * kPi);

    rep.residual = rep.direct_value -
                   (rep.constant_term + rep.cusp_sum + rep.eisenstein_integral);
    rep.error_budget = 8.0 * grid.estimated_error +
                       4.0 * (f.certified_error + g.certified_error) +
                       std::abs(prev) / (2.0 * kPi) * 2.0;  // Eisenstein truncation scale

    // coverage notes
    std::ostringstream notes;
    std::vector<double> even_t;
    for (const auto& u : basis) {
        if (u.parity == automorphic::Parity::Even) even_t.push_back(u.t);
    }
    std::sort(even_t.begin(), even_t.end());
    if (even_t.empty()) {
        notes << "WARNING: no even basis forms supplied; cusp sum is structurally incomplete. ";
    } else {
        if (even_t.front() > 14.0) {
            notes << "WARNING: lowest even basis form at t=" << even_t.front()
                  << " misses the bottom of the spectrum. ";
        }
        double worst = 0.0;
        for (std::size_t i = 1; i < even_t.size(); ++i) {
            worst = std::max(worst, even_t[i] - even_t[i - 1]);
        }
        if (worst > 4.5) {
            notes << "WARNING: gap of " << worst << " between consecutive even basis forms. ";
        }
        if (rep.cutoff < 2.0 * std::min(f.t, g.t) - 2.0) {
            notes << "note: basis cutoff " << rep.cutoff
                  << " sits below the decay edge 2*min(t_f,t_g); tail terms remain. ";
        }
    }
    rep.notes = notes.str();
    return rep;
}

DecayReport observable_spectral_decay(const ObservableSpec& observable,
                                      const std::vector<MaassForm>& basis,
                                      const QuadratureGrid& grid) {
    DecayReport rep;
    std::vector<double> psi(grid.nodes.size());
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) psi[i] = observable(grid.nodes[i]);
    for (const auto& u : basis) {
        const auto uv = values_on_grid(u, grid);
        const double c = weighted_sum(grid, {&psi, &uv});
        rep.t.push_back(u.t);
        rep.coefficient.push_back(c);
        rep.error.push_back(4.0 * grid.estimated_error + 3.0 * u.certified_error);
    }
    // least-squares slope of log|c| against log t over coefficients above noise
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < rep.t.size(); ++i) {
        if (std::abs(rep.coefficient[i]) < 10.0 * rep.error[i]) continue;
        const double x = std::log(rep.t[i]);
        const double y = std::log(std::abs(rep.coefficient[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    rep.fitted_exponent = (n >= 2) ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
    return rep;
}

}  // namespace hmf::moments

#include "hmf/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hmf/detail/gauss.hpp"
#include "hmf/special.hpp"
#include "hmf/util.hpp"

namespace hmf::domain {

namespace {

constexpr double kPi = specfun::kPi;

double lower_boundary(double x) { return std::sqrt(std::max(0.0, 1.0 - x * x)); }

}  // namespace

HalfPlanePoint Sl2Matrix::apply(const HalfPlanePoint& z) const {
    const double ca = static_cast<double>(a), cb = static_cast<double>(b);
    const double cc = static_cast<double>(c), cd = static_cast<double>(d);
    const double dx = cc * z.x + cd;
    const double dy = cc * z.y;
    const double den = dx * dx + dy * dy;
    const double nx = ca * z.x + cb;
    // (az+b)(conj(cz+d)) / |cz+d|^2, det = 1
    return {(nx * dx + ca * z.y * dy) / den, z.y / den};
}

Sl2Matrix Sl2Matrix::times(const Sl2Matrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

double hyperbolic_distance(const HalfPlanePoint& z, const HalfPlanePoint& w) {
    const double dx = z.x - w.x, dy = z.y - w.y;
    return std::acosh(1.0 + (dx * dx + dy * dy) / (2.0 * z.y * w.y));
}

ReductionResult reduce_to_fundamental(const HalfPlanePoint& z0) {
    if (!(z0.y > 0.0)) throw DomainError("reduce_to_fundamental: point not in upper half plane");
    double x = z0.x, y = z0.y;
    Sl2Matrix m;
    for (int iter = 0; iter < 10000; ++iter) {
        const double q = std::floor(x + 0.5);
        if (q != 0.0) {
            if (std::abs(q) > 9.0e15) throw CapacityError("reduce_to_fundamental: coefficient overflow");
            x -= q;
            const long long qi = static_cast<long long>(q);
            m = Sl2Matrix{1, -qi, 0, 1}.times(m);
        }
        const double n2 = x * x + y * y;
        if (n2 >= 1.0 - 1e-15) break;
        x = -x / n2;
        y = y / n2;
        m = Sl2Matrix{0, -1, 1, 0}.times(m);
        if (std::abs(static_cast<double>(m.c)) > 9.0e15) {
            throw CapacityError("reduce_to_fundamental: coefficient overflow");
        }
        if (iter == 9999) throw NumericalError("reduce_to_fundamental: did not terminate");
    }
    // canonical representative on the boundary
    if (x > 0.5 - 1e-15) {
        x -= 1.0;
        m = Sl2Matrix{1, -1, 0, 1}.times(m);
    }
    if (x > 0.0 && std::abs(x * x + y * y - 1.0) < 1e-14) {
        const double n2 = x * x + y * y;
        x = -x / n2;
        y = y / n2;
        m = Sl2Matrix{0, -1, 1, 0}.times(m);
    }
    // apply the accumulated integer matrix to the original point once, which
    // is more accurate than the drifting intermediate coordinates
    HalfPlanePoint exact = m.apply(z0);
    if (std::abs(exact.x - x) > 1e-9 || std::abs(exact.y - y) > 1e-9 * y) {
        throw NumericalError("reduce_to_fundamental: matrix drifted from orbit");
    }
    return {exact, m};
}

double QuadratureGrid::volume() const { return kPi / 3.0 - 1.0 / y_cutoff; }

namespace {

QuadratureGrid assemble_grid(double y_cutoff, double h_bulk) {
    QuadratureGrid g;
    g.y_cutoff = y_cutoff;
    const int nx = std::max(4, static_cast<int>(std::ceil(1.0 / h_bulk)));
    double max_gap = 0.0;

    // bulk: lower circular boundary up to y = 2, tensor panels mapped in y
    const int ny = std::max(4, static_cast<int>(std::ceil(1.2 / h_bulk)));
    for (int i = 0; i < nx; ++i) {
        const double xa = -0.5 + static_cast<double>(i) / nx;
        const double xb = -0.5 + static_cast<double>(i + 1) / nx;
        const double xh = (xb - xa) / 2.0, xm = (xa + xb) / 2.0;
        for (int k = 0; k < 20; ++k) {
            const double x = xm + xh * static_cast<double>(hmf::detail::kGaussX[k]);
            const double wx = xh * static_cast<double>(hmf::detail::kGaussW[k]);
            const double ylo = lower_boundary(x);
            const double span = 2.0 - ylo;
            for (int j = 0; j < ny; ++j) {
                const double sa = static_cast<double>(j) / ny;
                const double sb = static_cast<double>(j + 1) / ny;
                const double sh = (sb - sa) / 2.0, sm = (sa + sb) / 2.0;
                for (int l = 0; l < 20; ++l) {
                    const double s = sm + sh * static_cast<double>(hmf::detail::kGaussX[l]);
                    const double y = ylo + span * s;
                    const double w = wx * sh * static_cast<double>(hmf::detail::kGaussW[l]) * span / (y * y);
                    g.nodes.push_back({x, y});
                    g.weights.push_back(w);
                }
            }
        }
    }
    max_gap = std::max(1.0 / nx * 0.17, 1.2 / ny * 0.17);

    // cusp strip: geometric y-panels from 2 to the cutoff
    if (y_cutoff > 2.0) {
        std::vector<double> breaks{2.0};
        const double ratio = 1.30;
        while (breaks.back() * ratio < y_cutoff) breaks.push_back(breaks.back() * ratio);
        breaks.push_back(y_cutoff);
        for (int i = 0; i < nx; ++i) {
            const double xa = -0.5 + static_cast<double>(i) / nx;
            const double xb = -0.5 + static_cast<double>(i + 1) / nx;
            const double xh = (xb - xa) / 2.0, xm = (xa + xb) / 2.0;
            for (int k = 0; k < 20; ++k) {
                const double x = xm + xh * static_cast<double>(hmf::detail::kGaussX[k]);
                const double wx = xh * static_cast<double>(hmf::detail::kGaussW[k]);
                for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
                    const double yh = (breaks[p + 1] - breaks[p]) / 2.0;
                    const double ym = (breaks[p + 1] + breaks[p]) / 2.0;
                    for (int l = 0; l < 20; ++l) {
                        const double y = ym + yh * static_cast<double>(hmf::detail::kGaussX[l]);
                        const double w = wx * yh * static_cast<double>(hmf::detail::kGaussW[l]) / (y * y);
                        g.nodes.push_back({x, y});
                        g.weights.push_back(w);
                    }
                }
            }
        }
    }
    g.max_spacing = max_gap;
    return g;
}

double grid_check_error(const QuadratureGrid& g) {
    const double vol = g.volume();
    double sw = 0.0, iy1 = 0.0, iy2 = 0.0, osc = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const double w = g.weights[i], y = g.nodes[i].y, x = g.nodes[i].x;
        sw += w;
        iy1 += w / y;
        iy2 += w / (y * y);
        osc += w * std::cos(2.0 * kPi * 6.0 * x) * std::cos(9.0 * y);
    }
    const double Y = g.y_cutoff;
    const double ex1 = (std::log(3.0) - 1.0 / (Y * Y)) / 2.0;
    const double ex2 = (2.0 / std::sqrt(3.0) - 1.0 / (Y * Y * Y)) / 3.0;
    double err = std::max({std::abs(sw - vol), std::abs(iy1 - ex1), std::abs(iy2 - ex2)});
    (void)osc;  // oscillatory probe enters through the refinement comparison
    return err;
}

}  // namespace

QuadratureGrid build_grid(double y_cutoff, double target_error, double osc_hint) {
    if (!(y_cutoff >= 2.0)) throw DomainError("build_grid: y_cutoff must be >= 2");
    if (target_error < 1e-13) throw CapacityError("build_grid: target_error below attainable floor");
    double h = std::min(0.125, 5.0 / std::max(10.0, osc_hint));
    for (int attempt = 0; attempt < 4; ++attempt) {
        QuadratureGrid g = assemble_grid(y_cutoff, h);
        const double analytic = grid_check_error(g);
        // refinement difference on an oscillatory probe
        QuadratureGrid coarse = assemble_grid(y_cutoff, h * 1.45);
        auto probe = [](const HalfPlanePoint& z) {
            return std::cos(2.0 * kPi * 6.0 * z.x) * std::cos(9.0 * z.y) / (1.0 + z.y);
        };
        const double osc_diff = std::abs(g.integrate(probe) - coarse.integrate(probe));
        g.estimated_error = std::max({analytic, osc_diff, 5e-15 * g.nodes.size() / 1000.0});
        if (g.estimated_error <= target_error) return g;
        h *= 0.7;
    }
    throw CapacityError("build_grid: cannot reach target_error within resource budget");
}

void write_grid(const std::string& path, const QuadratureGrid& grid) {
    std::ofstream out(path);
    if (!out) throw CapacityError("write_grid: cannot open " + path);
    out << "GRID v1 " << grid.nodes.size() << " " << util::format_g17(grid.y_cutoff) << " "
        << util::format_g17(grid.estimated_error) << " " << util::format_g17(grid.max_spacing)
        << "\n";
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        out << util::format_g17(grid.nodes[i].x) << " " << util::format_g17(grid.nodes[i].y)
            << " " << util::format_g17(grid.weights[i]) << "\n";
    }
}

QuadratureGrid read_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CapacityError("read_grid: cannot open " + path);
    std::string tag, ver;
    std::size_t n = 0;
    QuadratureGrid g;
    in >> tag >> ver >> n >> g.y_cutoff >> g.estimated_error >> g.max_spacing;
    if (tag != "GRID" || ver != "v1") throw UsageError("read_grid: unrecognized header");
    g.nodes.resize(n);
    g.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        in >> g.nodes[i].x >> g.nodes[i].y >> g.weights[i];
    }
    if (!in) throw UsageError("read_grid: truncated file");
    return g;
}

Observable::Observable(HalfPlanePoint center, double radius)
    : center_(center), radius_(radius) {
    if (!(center.y > 0.0)) throw DomainError("make_bump: center not in upper half plane");
    if (!(radius > 0.0)) throw DomainError("make_bump: radius must be positive");
    // Enumerate group elements moving the center by less than 2r + slack; the
    // slack covers every evaluation point of the closed ball's neighborhood.
    const double keep = 2.0 * radius + 3.0;
    const Sl2Matrix gens[3] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}};
    std::set<std::array<long long, 4>> seen;
    std::vector<Sl2Matrix> frontier{Sl2Matrix{}}, all{Sl2Matrix{}};
    seen.insert({1, 0, 0, 1});
    double min_move = 1e300;
    for (int depth = 0; depth < 14 && !frontier.empty(); ++depth) {
        std::vector<Sl2Matrix> next;
        for (const auto& m : frontier) {
            for (const auto& gmat : gens) {
                Sl2Matrix cand = gmat.times(m);
                // normalize the sign so +-M dedupe together
                if (cand.a < 0 || (cand.a == 0 && cand.c < 0)) {
                    cand = {-cand.a, -cand.b, -cand.c, -cand.d};
                }
                if (!seen.insert({cand.a, cand.b, cand.c, cand.d}).second) continue;
                const double dist = hyperbolic_distance(cand.apply(center), center);
                if (dist <= keep) {
                    next.push_back(cand);
                    all.push_back(cand);
                    if (!cand.is_identity()) min_move = std::min(min_move, dist);
                }
            }
        }
        frontier = std::move(next);
    }
    if (min_move <= 2.0 * radius) {
        throw DomainError("make_bump: ball of this radius does not inject into the quotient");
    }
    orbit_.reserve(all.size());
    for (const auto& m : all) orbit_.push_back(m.apply(center));
}

double Observable::operator()(const HalfPlanePoint& z) const {
    double dmin = 1e300;
    for (const auto& c : orbit_) dmin = std::min(dmin, hyperbolic_distance(z, c));
    const double r = dmin / radius_;
    if (r >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

Observable make_bump(HalfPlanePoint center, double radius) { return {center, radius}; }

}  // namespace hmf::domain

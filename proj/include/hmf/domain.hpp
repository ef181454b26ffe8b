#pragma once

#include <array>
#include <string>
#include <vector>

#include "hmf/errors.hpp"

namespace hmf::domain {

struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;  // y > 0
};

// Integer matrix [[a,b],[c,d]] with det 1, acting by Mobius maps.
struct Sl2Matrix {
    long long a = 1, b = 0, c = 0, d = 1;

    HalfPlanePoint apply(const HalfPlanePoint& z) const;
    Sl2Matrix times(const Sl2Matrix& o) const;
    bool is_identity() const { return (a == 1 && b == 0 && c == 0 && d == 1) ||
                                      (a == -1 && b == 0 && c == 0 && d == -1); }
};

struct ReductionResult {
    HalfPlanePoint point;
    Sl2Matrix gamma;  // gamma * input = point
};

// Reduce to the standard fundamental domain |x| <= 1/2, |z| >= 1.
// Ties resolved toward Re = -1/2 and, on |z| = 1, Re <= 0.
ReductionResult reduce_to_fundamental(const HalfPlanePoint& z);

// Hyperbolic distance on the upper half plane.
double hyperbolic_distance(const HalfPlanePoint& z, const HalfPlanePoint& w);

struct QuadratureGrid {
    std::vector<HalfPlanePoint> nodes;
    std::vector<double> weights;  // units of d mu = dx dy / y^2
    double y_cutoff = 0.0;
    double estimated_error = 0.0;
    double max_spacing = 0.0;  // largest gap between adjacent nodes in either direction

    double volume() const;  // pi/3 - 1/y_cutoff

    // Ordered quadrature of an arbitrary integrand.
    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// Gauss-Legendre panels over the truncated fundamental domain: tensor panels
// mapped to the circular lower boundary for y <= 2, geometrically graded
// panels in the cusp strip above.  osc_hint bounds the spectral parameter of
// the integrands the grid must resolve.
QuadratureGrid build_grid(double y_cutoff, double target_error, double osc_hint = 40.0);

void write_grid(const std::string& path, const QuadratureGrid& grid);
QuadratureGrid read_grid(const std::string& path);

// Smooth bump supported on an injectively embedded hyperbolic ball.
class Observable {
public:
    Observable(HalfPlanePoint center, double radius);

    double operator()(const HalfPlanePoint& z) const;
    const HalfPlanePoint& center() const { return center_; }
    double radius() const { return radius_; }

private:
    HalfPlanePoint center_;
    double radius_;
    std::vector<HalfPlanePoint> orbit_;  // images of center near the domain
};

Observable make_bump(HalfPlanePoint center, double radius);

}  // namespace hmf::domain

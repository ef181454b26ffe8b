#pragma once

#include "hmf/errors.hpp"
#include "hmf/log_scale.hpp"

namespace hmf::arch {

struct SpectralQuadruple {
    double t_j = 0.0;
    double t_f = 1.0;
    double t_g = 1.0;
    double t_k = 0.0;
};

// Q(t_j; t_f, t_g) = |t_f+t_j/2| + |t_f-t_j/2| + |t_g+t_j/2| + |t_g-t_j/2| - 2t_f - 2t_g
double q_direct(double t_j, double t_f, double t_g);

// Case-table form; requires t_f <= t_g.
double q_piecewise(double t_j, double t_f, double t_g);

// Q1(t_j; t_f, t_g, t_k): the eight-term absolute-value combination.
double q1_direct(double t_j, double t_f, double t_g, double t_k);

// Case-table form over the three regimes split by 2t_f vs t_g -+ t_k.
double q1_piecewise(double t_j, double t_f, double t_g, double t_k);

// log of the gamma-factor ratio weight
//   L_oo(1/2,u_j) L_oo(1/2,sym2 f x u_j)^{1/2} L_oo(1/2,sym2 g x u_j)^{1/2}
//   / ( L_oo(1,sym2 f) L_oo(1,sym2 g) L_oo(1,sym2 u_j) )
// with Gamma_R(s) = pi^{-s/2} Gamma(s/2) and even-parity shift patterns.
LogScaleValue h_weight_log(double t_j, double t_f, double t_g);

// log of the envelope for <f^2, g>:
//   exp(-pi/2 (|t_f+t_g/2| + |t_f-t_g/2| - 2 t_f))
//   / ( t_g^{1/2} prod_{+-} (1 + |t_g +- 2 t_f|)^{1/4} )
LogScaleValue watson_envelope_f2g(double t_f, double t_g);

}  // namespace hmf::arch

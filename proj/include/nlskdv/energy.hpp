#pragma once

// Energy functional Phi(u, v) = I1(u) + I2(v) - (beta/2) int u^2 v and the
// quantities derived from it. Every integral goes through the grid's
// trapezoid rule and link-difference energy, so the residual below is the
// exact discrete gradient of phi() (up to the trapezoid end weights, which
// only matter for fields that do not vanish at +-L).

#include "nlskdv/grid.hpp"
#include "nlskdv/model.hpp"

namespace nlskdv {

struct EnergyBreakdown {
    double I1 = 0.0;
    double I2 = 0.0;
    double coupling = 0.0;  // (beta/2) int u^2 v
    double phi = 0.0;       // I1 + I2 - coupling
};

double I1(std::span<const double> u, double lambda1, const Grid& g);
double I2(std::span<const double> v, double lambda2, const Grid& g);

EnergyBreakdown phi(const PairField& w, const Params& p, const Grid& g);

/// Psi(w) = (Phi'(w) | w) = ||u||_1^2 - int u^4 + ||v||_2^2 - 1/2 int v^3 - 3/2 beta int u^2 v.
double psi(const PairField& w, const Params& p, const Grid& g);

/// F(w) = ||w||^2 / 6 + int u^4 / 12; equals Phi on the Nehari set.
double restricted_F(const PairField& w, const Params& p, const Grid& g);

/// ||w||^2 = ||u||_1^2 + ||v||_2^2.
double pair_norm_sq(const PairField& w, const Params& p, const Grid& g);

/// Strong-form residual of the stationary system; zero exactly at bound states.
PairField residual(const PairField& w, const Params& p, const Grid& g);
double residual_inf(const PairField& w, const Params& p, const Grid& g);

/// Phi''(w)[h]^2.
double hess_quadform(const PairField& w, const PairField& h, const Params& p, const Grid& g);

/// Jacobian of residual() at w applied to h. The matrix is symmetric and
/// h_i * h * (J h)_i summed over nodes reproduces hess_quadform for fields
/// vanishing at the box ends.
PairField apply_jacobian(const PairField& w, const PairField& h, const Params& p, const Grid& g);

/// int a*b over the grid for both components.
double pairing(const PairField& a, const PairField& b, const Grid& g);

}  // namespace nlskdv

#pragma once

#include "nlskdv/grid.hpp"

namespace nlskdv {

/// Coefficients of the stationary system
///   -u'' + lambda1 u = u^3 + beta u v
///   -v'' + lambda2 v = v^2/2 + beta u^2/2.
struct Params {
    double lambda1 = 1.0;
    double lambda2 = 1.0;
    double beta = 0.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Traveling-wave data of the dispersive system: f = e^{i(wt+kx)} u(x-ct), g = v(x-ct).
struct WaveParams {
    double k;
    double omega;
    double c;  // always 2k
};

/// lambda1 = k^2 + omega, lambda2 = c = 2k; beta is left for the caller.
Params wave_params(double k, double omega, double beta = 0.0);
WaveParams make_wave(double k, double omega);

/// sqrt(2 lambda1) sech(sqrt(lambda1) x), the positive even solution of -u''+lambda1 u = u^3.
RealField soliton_U1(double lambda1, const Grid& g);

/// 3 lambda2 sech^2(sqrt(lambda2) x / 2), the positive even solution of -v''+lambda2 v = v^2/2.
RealField soliton_V2(double lambda2, const Grid& g);

/// (3/2) sech^2(x/2), the solution of -v'' + v = v^2 used in V2(x) = 2 lambda2 V(sqrt(lambda2) x).
double reference_V(double x);

}  // namespace nlskdv

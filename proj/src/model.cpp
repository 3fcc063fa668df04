#include "nlskdv/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlskdv {

namespace {

double sech(double x)
{
    // cosh overflows near |x| ~ 710; the profile is zero to double precision long before.
    const double ax = std::abs(x);
    if (ax > 700.0) return 0.0;
    return 1.0 / std::cosh(ax);
}

}  // namespace

void Params::validate() const
{
    if (!(lambda1 > 0.0) || !std::isfinite(lambda1)) {
        throw std::invalid_argument("lambda1 must be positive and finite, got " +
                                    std::to_string(lambda1));
    }
    if (!(lambda2 > 0.0) || !std::isfinite(lambda2)) {
        throw std::invalid_argument("lambda2 must be positive and finite, got " +
                                    std::to_string(lambda2));
    }
    if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
}

WaveParams make_wave(double k, double omega)
{
    if (!(k > 0.0)) {
        throw std::invalid_argument("wave number k must be positive (lambda2 = 2k), got " +
                                    std::to_string(k));
    }
    if (!(k * k + omega > 0.0)) {
        throw std::invalid_argument("k^2 + omega must be positive (lambda1 = k^2 + omega)");
    }
    return {k, omega, 2.0 * k};
}

Params wave_params(double k, double omega, double beta)
{
    const WaveParams wave = make_wave(k, omega);
    return {wave.k * wave.k + wave.omega, wave.c, beta};
}

RealField soliton_U1(double lambda1, const Grid& g)
{
    if (!(lambda1 > 0.0)) throw std::invalid_argument("soliton_U1: lambda1 must be positive");
    const double amplitude = std::sqrt(2.0 * lambda1);
    const double rate = std::sqrt(lambda1);
    RealField u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = amplitude * sech(rate * g.x(i));
    return u;
}

RealField soliton_V2(double lambda2, const Grid& g)
{
    if (!(lambda2 > 0.0)) throw std::invalid_argument("soliton_V2: lambda2 must be positive");
    const double amplitude = 3.0 * lambda2;
    const double rate = 0.5 * std::sqrt(lambda2);
    RealField v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = sech(rate * g.x(i));
        v[i] = amplitude * s * s;
    }
    return v;
}

double reference_V(double x)
{
    const double s = sech(0.5 * x);
    return 1.5 * s * s;
}

}  // namespace nlskdv

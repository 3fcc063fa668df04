#include "nlskdv/energy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nlskdv {

namespace {

template <typename Fn>
double integrate_pointwise(std::size_t n, const Grid& g, Fn&& fn)
{
    RealField values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = fn(i);
    return integrate(values, g);
}

void check_pair(const PairField& w, const Grid& g)
{
    if (w.u.size() != g.size() || w.v.size() != g.size()) {
        throw std::invalid_argument("pair field does not match grid size");
    }
}

// The three nonlinear integrals shared by phi, psi and the Nehari scaling.
struct Moments {
    double quartic_u;   // int u^4
    double cubic_v;     // int v^3
    double mixed;       // int u^2 v
};

Moments moments(const PairField& w, const Grid& g)
{
    const auto& u = w.u;
    const auto& v = w.v;
    const std::size_t n = g.size();
    return {
        integrate_pointwise(n, g, [&](std::size_t i) { return u[i] * u[i] * u[i] * u[i]; }),
        integrate_pointwise(n, g, [&](std::size_t i) { return v[i] * v[i] * v[i]; }),
        integrate_pointwise(n, g, [&](std::size_t i) { return u[i] * u[i] * v[i]; }),
    };
}

}  // namespace

double I1(std::span<const double> u, double lambda1, const Grid& g)
{
    const double quartic =
        integrate_pointwise(u.size(), g, [&](std::size_t i) { return u[i] * u[i] * u[i] * u[i]; });
    return 0.5 * norm_j_sq(u, lambda1, g) - 0.25 * quartic;
}

double I2(std::span<const double> v, double lambda2, const Grid& g)
{
    const double cubic =
        integrate_pointwise(v.size(), g, [&](std::size_t i) { return v[i] * v[i] * v[i]; });
    return 0.5 * norm_j_sq(v, lambda2, g) - cubic / 6.0;
}

EnergyBreakdown phi(const PairField& w, const Params& p, const Grid& g)
{
    check_pair(w, g);
    EnergyBreakdown e;
    e.I1 = I1(w.u, p.lambda1, g);
    e.I2 = I2(w.v, p.lambda2, g);
    const auto& u = w.u;
    const auto& v = w.v;
    e.coupling = 0.5 * p.beta *
                 integrate_pointwise(g.size(), g, [&](std::size_t i) { return u[i] * u[i] * v[i]; });
    e.phi = e.I1 + e.I2 - e.coupling;
    return e;
}

double pair_norm_sq(const PairField& w, const Params& p, const Grid& g)
{
    check_pair(w, g);
    return norm_j_sq(w.u, p.lambda1, g) + norm_j_sq(w.v, p.lambda2, g);
}

double psi(const PairField& w, const Params& p, const Grid& g)
{
    const Moments m = moments(w, g);
    return pair_norm_sq(w, p, g) - m.quartic_u - 0.5 * m.cubic_v - 1.5 * p.beta * m.mixed;
}

double restricted_F(const PairField& w, const Params& p, const Grid& g)
{
    const auto& u = w.u;
    const double quartic =
        integrate_pointwise(g.size(), g, [&](std::size_t i) { return u[i] * u[i] * u[i] * u[i]; });
    return pair_norm_sq(w, p, g) / 6.0 + quartic / 12.0;
}

PairField residual(const PairField& w, const Params& p, const Grid& g)
{
    check_pair(w, g);
    const std::size_t n = g.size();
    PairField r{second_derivative(w.u, g), second_derivative(w.v, g)};
    for (std::size_t i = 0; i < n; ++i) {
        const double u = w.u[i];
        const double v = w.v[i];
        r.u[i] = -r.u[i] + p.lambda1 * u - u * u * u - p.beta * u * v;
        r.v[i] = -r.v[i] + p.lambda2 * v - 0.5 * v * v - 0.5 * p.beta * u * u;
    }
    return r;
}

double residual_inf(const PairField& w, const Params& p, const Grid& g)
{
    return max_abs(residual(w, p, g));
}

double hess_quadform(const PairField& w, const PairField& h, const Params& p, const Grid& g)
{
    check_pair(w, g);
    check_pair(h, g);
    const auto& u = w.u;
    const auto& v = w.v;
    const auto& h1 = h.u;
    const auto& h2 = h.v;
    const double potential_terms = integrate_pointwise(g.size(), g, [&](std::size_t i) {
        return 3.0 * u[i] * u[i] * h1[i] * h1[i] + v[i] * h2[i] * h2[i] +
               p.beta * v[i] * h1[i] * h1[i] + 2.0 * p.beta * u[i] * h1[i] * h2[i];
    });
    return norm_j_sq(h1, p.lambda1, g) + norm_j_sq(h2, p.lambda2, g) - potential_terms;
}

PairField apply_jacobian(const PairField& w, const PairField& h, const Params& p, const Grid& g)
{
    check_pair(w, g);
    check_pair(h, g);
    PairField out{second_derivative(h.u, g), second_derivative(h.v, g)};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u = w.u[i];
        const double v = w.v[i];
        out.u[i] = -out.u[i] + (p.lambda1 - 3.0 * u * u - p.beta * v) * h.u[i] - p.beta * u * h.v[i];
        out.v[i] = -out.v[i] - p.beta * u * h.u[i] + (p.lambda2 - v) * h.v[i];
    }
    return out;
}

double pairing(const PairField& a, const PairField& b, const Grid& g)
{
    check_pair(a, g);
    check_pair(b, g);
    const std::size_t n = g.size();
    return integrate_pointwise(n, g, [&](std::size_t i) { return a.u[i] * b.u[i] + a.v[i] * b.v[i]; });
}

}  // namespace nlskdv

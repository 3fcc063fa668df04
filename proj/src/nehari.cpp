#include "nlskdv/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlskdv/continuation.hpp"

namespace nlskdv {

SolveReport evaluate_report(PairField profile, const Params& p, const Grid& g)
{
    SolveReport r;
    r.profile = std::move(profile);
    r.phi = phi(r.profile, p, g).phi;
    r.F = restricted_F(r.profile, p, g);
    r.residual_inf = residual_inf(r.profile, p, g);
    r.psi_value = psi(r.profile, p, g);
    r.positive = min_value(r.profile.u) > 0.0 && min_value(r.profile.v) > 0.0;
    r.even = evenness_defect(r.profile.u) == 0.0 && evenness_defect(r.profile.v) == 0.0;
    return r;
}

RayCoefficients ray_coefficients(const PairField& w, const Params& p, const Grid& g)
{
    RealField quartic(g.size()), cubic(g.size()), mixed(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double u2 = w.u[i] * w.u[i];
        quartic[i] = u2 * u2;
        cubic[i] = w.v[i] * w.v[i] * w.v[i];
        mixed[i] = u2 * w.v[i];
    }
    return {pair_norm_sq(w, p, g), 0.5 * integrate(cubic, g) + 1.5 * p.beta * integrate(mixed, g),
            integrate(quartic, g)};
}

double nehari_scale(const PairField& w, const Params& p, const Grid& g)
{
    const auto [A, B, C] = ray_coefficients(w, p, g);
    if (!(A > 0.0)) throw ProjectionError("nehari projection: the zero state is excluded");
    double t = 0.0;
    if (C > 0.0) {
        const double root = std::sqrt(B * B + 4.0 * A * C);
        // Pick the cancellation-free form of the positive root.
        t = B >= 0.0 ? 2.0 * A / (B + root) : (root - B) / (2.0 * C);
    } else if (B > 0.0) {
        t = A / B;
    } else {
        throw ProjectionError("nehari projection: the ray through the state misses the Nehari set "
                              "(int u^4 = 0 and cubic part <= 0)");
    }
    // One Newton correction on A - tB - t^2 C.
    const double q = A - t * B - t * t * C;
    const double dq = -B - 2.0 * t * C;
    if (dq != 0.0) t -= q / dq;
    if (!(t > 0.0) || !std::isfinite(t)) throw ProjectionError("nehari projection: no positive root");
    return t;
}

PairField project(const PairField& w, const Params& p, const Grid& g)
{
    return scaled(nehari_scale(w, p, g), w);
}

namespace {

PairField preconditioned(const PairField& r, const Params& p, const Grid& g)
{
    return {solve_shifted_laplacian(r.u, p.lambda1, g), solve_shifted_laplacian(r.v, p.lambda2, g)};
}

void make_even(PairField& w)
{
    symmetrize(w.u);
    symmetrize(w.v);
}

}  // namespace

DescentResult minimize_on_nehari(const PairField& w0, const Params& p, const Grid& g,
                                 const DescentOptions& opts)
{
    p.validate();
    DescentResult out;
    PairField w = w0;
    if (opts.enforce_even) make_even(w);
    try {
        w = project(w, p, g);
    } catch (const ProjectionError& e) {
        out.report = evaluate_report(std::move(w), p, g);
        out.report.message = e.what();
        return out;
    }

    double F = restricted_F(w, p, g);
    if (opts.record_trace) out.F_trace.push_back(F);
    const double roundoff = 8.0 * std::numeric_limits<double>::epsilon();
    int it = 0;
    bool converged = false;
    std::string message;
    for (; it < opts.max_iter; ++it) {
        const PairField r = residual(w, p, g);
        const double r_inf = max_abs(r);
        if (r_inf <= opts.tolerance) {
            converged = true;
            break;
        }
        const PairField d = preconditioned(r, p, g);
        const double slope = pairing(r, d, g);

        double step = opts.initial_step;
        bool accepted = false;
        for (int b = 0; b < opts.max_backtracks; ++b, step *= opts.backtrack) {
            PairField trial = axpy(-step, d, w);
            if (opts.enforce_even) make_even(trial);
            try {
                trial = project(trial, p, g);
            } catch (const ProjectionError&) {
                continue;
            }
            const double F_trial = restricted_F(trial, p, g);
            bool accept = F_trial <= F - opts.armijo * step * slope;
            // Near the minimizer the Armijo decrease drops below the rounding
            // level of F; accept non-increasing steps that still reduce the residual.
            if (!accept && F_trial - F <= roundoff * std::abs(F)) {
                accept = residual_inf(trial, p, g) < r_inf;
            }
            if (accept) {
                w = std::move(trial);
                F = F_trial;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            message = "descent stalled: no decrease of F after backtracking";
            break;
        }
        if (opts.record_trace) out.F_trace.push_back(F);
    }
    if (!converged && message.empty() && it >= opts.max_iter) {
        message = "descent reached max_iter";
    }

    out.report = evaluate_report(std::move(w), p, g);
    out.report.iterations = it;
    out.report.converged = converged && std::abs(out.report.psi_value) <= opts.tolerance;
    out.report.message = converged ? "converged" : message;
    return out;
}

GroundStateReport ground_state(const Params& p, const Grid& g, const GroundStateOptions& opts)
{
    p.validate();
    GroundStateReport out;
    const RealField U1 = soliton_U1(p.lambda1, g);
    const RealField V2 = soliton_V2(p.lambda2, g);
    const RealField zero(g.size(), 0.0);
    out.phi_semitrivial_v2 = phi({zero, V2}, p, g).phi;
    out.phi_semitrivial_u1 = phi({U1, zero}, p, g).phi;

    const double eps = opts.start_weight;
    const std::vector<PairField> starts = {
        {U1, scaled(eps, V2)},
        {scaled(eps, U1), V2},
        {U1, V2},
    };

    const double tol = opts.descent.tolerance;
    for (const auto& start : starts) {
        SolveReport candidate = minimize_on_nehari(start, p, g, opts.descent).report;
        const int descent_iterations = candidate.iterations;

        PairField folded = candidate.profile;
        for (auto& value : folded.u) value = std::abs(value);
        for (auto& value : folded.v) value = std::abs(value);
        try {
            folded = project(folded, p, g);
        } catch (const ProjectionError& e) {
            candidate.message = e.what();
            out.candidates.push_back(std::move(candidate));
            continue;
        }

        SolveReport polished = evaluate_report(folded, p, g);
        polished.iterations = descent_iterations;
        polished.message = candidate.message;
        if (opts.newton_polish) {
            try {
                NewtonResult newton = newton_solve(folded, p, g);
                if (newton.report.residual_inf <= polished.residual_inf) {
                    const int newton_iterations = newton.report.iterations;
                    polished = std::move(newton.report);
                    polished.iterations = descent_iterations + newton_iterations;
                    polished.message = "converged (descent + newton)";
                }
            } catch (const NewtonError& e) {
                polished.message = candidate.message + "; newton polish failed: " + e.what();
            }
        }
        polished.converged =
            polished.residual_inf <= tol && std::abs(polished.psi_value) <= tol;
        out.candidates.push_back(std::move(polished));
    }

    const SolveReport* best = nullptr;
    auto min_node = [](const SolveReport& r) {
        return std::min(min_value(r.profile.u), min_value(r.profile.v));
    };
    for (const auto& c : out.candidates) {
        if (!c.converged) continue;
        if (best == nullptr || c.phi < best->phi - 1e-10 ||
            (std::abs(c.phi - best->phi) <= 1e-10 && min_node(c) > min_node(*best))) {
            best = &c;
        }
    }
    if (best == nullptr) {
        // Nothing converged; hand back the lowest-energy attempt, flagged.
        for (const auto& c : out.candidates) {
            if (best == nullptr || c.phi < best->phi) best = &c;
        }
        out.best = best ? *best : SolveReport{};
        out.best.converged = false;
        if (out.best.message.empty()) out.best.message = "no start converged";
    } else {
        out.best = *best;
    }
    const double semitrivial = std::min(out.phi_semitrivial_v2, out.phi_semitrivial_u1);
    out.margin = semitrivial - out.best.phi;
    const double size_u = max_abs(out.best.profile.u);
    const double size_v = max_abs(out.best.profile.v);
    const bool two_component = std::min(size_u, size_v) > 1e-8 * std::max(size_u, size_v);
    out.below_semitrivial = out.best.converged && two_component && out.margin > 0.0;
    return out;
}

}  // namespace nlskdv

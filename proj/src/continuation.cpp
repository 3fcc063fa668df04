#include "nlskdv/continuation.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

namespace nlskdv {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

// Jacobian of the residual restricted to even fields, on nodes x >= 0.
// Unknowns are interleaved: 2j -> u at node m+j, 2j+1 -> v at node m+j.
SparseMatrix even_jacobian(const PairField& w, const Params& p, const Grid& g)
{
    const std::size_t m = g.center();
    const std::size_t half = g.size() - m;
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(8 * half);
    for (std::size_t j = 0; j < half; ++j) {
        const double u = w.u[m + j];
        const double v = w.v[m + j];
        const auto ru = static_cast<int>(2 * j);
        const auto rv = ru + 1;

        entries.emplace_back(ru, ru, 2.0 * inv_h2 + p.lambda1 - 3.0 * u * u - p.beta * v);
        entries.emplace_back(rv, rv, 2.0 * inv_h2 + p.lambda2 - v);
        entries.emplace_back(ru, rv, -p.beta * u);
        entries.emplace_back(rv, ru, -p.beta * u);

        if (j == 0) {
            // Mirror condition w_{m-1} = w_{m+1}.
            entries.emplace_back(ru, ru + 2, -2.0 * inv_h2);
            entries.emplace_back(rv, rv + 2, -2.0 * inv_h2);
            continue;
        }
        entries.emplace_back(ru, ru - 2, -inv_h2);
        entries.emplace_back(rv, rv - 2, -inv_h2);
        if (j + 1 < half) {
            entries.emplace_back(ru, ru + 2, -inv_h2);
            entries.emplace_back(rv, rv + 2, -inv_h2);
        }
    }
    const auto dim = static_cast<int>(2 * half);
    SparseMatrix J(dim, dim);
    J.setFromTriplets(entries.begin(), entries.end());
    return J;
}

}  // namespace

NewtonResult newton_solve(const PairField& w0, const Params& p, const Grid& g,
                          const NewtonOptions& opts)
{
    p.validate();
    if (w0.u.size() != g.size() || w0.v.size() != g.size()) {
        throw std::invalid_argument("newton_solve: start does not match grid");
    }
    if (max_abs(w0) == 0.0) {
        throw NewtonError("newton_solve: the zero state is a trivial solution and is excluded");
    }

    const std::size_t m = g.center();
    const std::size_t half = g.size() - m;
    PairField w = w0;
    symmetrize(w.u);
    symmetrize(w.v);

    NewtonResult out;
    double r_inf = residual_inf(w, p, g);
    int increases = 0;
    int it = 0;
    for (; it < opts.max_iter && r_inf > opts.tolerance; ++it) {
        if (opts.record_history) out.residual_history.push_back(r_inf);
        const PairField r = residual(w, p, g);
        Vector rhs(2 * half);
        for (std::size_t j = 0; j < half; ++j) {
            rhs[2 * j] = -r.u[m + j];
            rhs[2 * j + 1] = -r.v[m + j];
        }

        SparseMatrix J = even_jacobian(w, p, g);
        Eigen::SparseLU<SparseMatrix> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) {
            throw NewtonError("newton_solve: singular Jacobian at iterate " + std::to_string(it));
        }
        const Vector delta = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !delta.allFinite()) {
            throw NewtonError("newton_solve: linear solve failed at iterate " + std::to_string(it));
        }

        for (std::size_t j = 0; j < half; ++j) {
            w.u[m + j] += delta[2 * j];
            w.v[m + j] += delta[2 * j + 1];
            w.u[m - j] = w.u[m + j];
            w.v[m - j] = w.v[m + j];
        }

        const double next = residual_inf(w, p, g);
        if (!std::isfinite(next)) {
            throw NewtonError("newton_solve: non-finite residual at iterate " + std::to_string(it));
        }
        increases = next > r_inf ? increases + 1 : 0;
        r_inf = next;
        if (increases >= 2) {
            throw NewtonError("newton_solve: residual grew on two consecutive iterations (" +
                              std::to_string(r_inf) + ")");
        }
    }
    if (opts.record_history) out.residual_history.push_back(r_inf);

    if (max_abs(w) == 0.0) throw NewtonError("newton_solve: iteration collapsed to the zero state");

    out.report = evaluate_report(std::move(w), p, g);
    out.report.iterations = it;
    out.report.converged = out.report.residual_inf <= opts.tolerance;
    out.report.message = out.report.converged ? "converged" : "newton reached max_iter";
    return out;
}

PairField decoupled_solution(const Params& p, const Grid& g)
{
    Params decoupled = p;
    decoupled.beta = 0.0;
    const PairField start{soliton_U1(p.lambda1, g), soliton_V2(p.lambda2, g)};
    return newton_solve(start, decoupled, g).report.profile;
}

namespace {

double sup_distance(const PairField& a, const PairField& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        d = std::max({d, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
    }
    return d;
}

// Marches from (beta_from, w) to beta_to in `substeps` equal Newton solves.
bool march(PairField& w, double beta_from, double beta_to, int substeps, Params p,
           const Grid& g, const NewtonOptions& opts, SolveReport& last)
{
    PairField current = w;
    for (int s = 1; s <= substeps; ++s) {
        p.beta = beta_from + (beta_to - beta_from) * static_cast<double>(s) / substeps;
        try {
            NewtonResult result = newton_solve(current, p, g, opts);
            if (!result.report.converged) return false;
            current = result.report.profile;
            last = std::move(result.report);
        } catch (const NewtonError&) {
            return false;
        }
    }
    w = std::move(current);
    return true;
}

}  // namespace

Branch continue_in_beta(const Params& base, double beta_target, int steps, const Grid& g,
                        const ContinuationOptions& opts)
{
    base.validate();
    if (!(beta_target >= 0.0) || !std::isfinite(beta_target)) {
        throw std::invalid_argument("continue_in_beta: beta_target must be >= 0");
    }
    if (steps < 1) throw std::invalid_argument("continue_in_beta: steps must be >= 1");

    Params p = base;
    p.beta = 0.0;
    const PairField u0 = decoupled_solution(p, g);

    Branch branch;
    if (beta_target == 0.0) {
        BranchPoint point;
        point.beta = 0.0;
        point.report = evaluate_report(u0, p, g);
        point.report.converged = point.report.residual_inf <= opts.newton.tolerance;
        point.distance_to_u0 = 0.0;
        branch.points.push_back(std::move(point));
        branch.complete = true;
        return branch;
    }

    PairField w = u0;
    double beta = 0.0;
    for (int k = 1; k <= steps; ++k) {
        const double next = beta_target * static_cast<double>(k) / steps;
        SolveReport report;
        bool ok = false;
        for (int halving = 0; halving <= opts.max_halvings && !ok; ++halving) {
            ok = march(w, beta, next, 1 << halving, p, g, opts.newton, report);
        }
        if (!ok) {
            branch.message = "newton failed to reach beta = " + std::to_string(next) +
                             " after " + std::to_string(opts.max_halvings) + " step halvings";
            if (k == 1) {
                BranchPoint origin;
                origin.beta = 0.0;
                origin.report = evaluate_report(u0, p, g);
                origin.report.converged = origin.report.residual_inf <= opts.newton.tolerance;
                branch.points.push_back(std::move(origin));
                branch.last_good_beta = 0.0;
                throw ContinuationError("continuation: first step too large; " + branch.message,
                                        std::move(branch));
            }
            return branch;
        }
        beta = next;
        BranchPoint point;
        point.beta = beta;
        point.distance_to_u0 = sup_distance(report.profile, u0);
        point.report = std::move(report);
        branch.points.push_back(std::move(point));
        branch.last_good_beta = beta;
    }
    branch.complete = true;
    return branch;
}

}  // namespace nlskdv

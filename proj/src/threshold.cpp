#include "nlskdv/threshold.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "nlskdv/model.hpp"

namespace nlskdv {

namespace {

double weighted_square(std::span<const double> weight, std::span<const double> field, const Grid& g)
{
    RealField values(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) values[i] = weight[i] * field[i] * field[i];
    return integrate(values, g);
}

// Sign so that the field is positive at the center, then scale to int V2 phi^2 = 1.
void normalize_eigenfunction(RealField& phi_field, std::span<const double> V2, const Grid& g)
{
    const double sign = phi_field[g.center()] < 0.0 ? -1.0 : 1.0;
    const double scale = sign / std::sqrt(weighted_square(V2, phi_field, g));
    for (auto& value : phi_field) value *= scale;
}

ThresholdReport dense_threshold(double lambda1, const RealField& V2, const Grid& g)
{
    const auto n = static_cast<Eigen::Index>(g.size());
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, i) = 2.0 * inv_h2 + lambda1;
        if (i + 1 < n) {
            A(i, i + 1) = -inv_h2;
            A(i + 1, i) = -inv_h2;
        }
        B(i, i) = V2[static_cast<std::size_t>(i)];
    }
    // V2 phi = mu A phi with A positive definite; the largest mu is 1 / Lambda.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(B, A);
    if (solver.info() != Eigen::Success) {
        throw ThresholdError("lambda_threshold: dense eigensolve failed", 0.0);
    }
    const Eigen::Index top = n - 1;  // eigenvalues are ascending
    ThresholdReport report;
    report.lambda_threshold = 1.0 / solver.eigenvalues()[top];
    report.eigenfunction.resize(g.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        report.eigenfunction[static_cast<std::size_t>(i)] = solver.eigenvectors()(i, top);
    }
    symmetrize(report.eigenfunction);
    normalize_eigenfunction(report.eigenfunction, V2, g);
    return report;
}

}  // namespace

double threshold_quotient(std::span<const double> field, double lambda1, std::span<const double> V2,
                          const Grid& g)
{
    return norm_j_sq(field, lambda1, g) / weighted_square(V2, field, g);
}

ThresholdReport lambda_threshold(double lambda1, double lambda2, const Grid& g,
                                 const ThresholdOptions& opts)
{
    Params{lambda1, lambda2, 0.0}.validate();
    const RealField V2 = soliton_V2(lambda2, g);

    ThresholdReport report;
    if (opts.dense) {
        if (g.size() > 1025) {
            throw std::invalid_argument("lambda_threshold: dense path is limited to n <= 1025");
        }
        report = dense_threshold(lambda1, V2, g);
    } else {
        RealField current = soliton_U1(lambda1, g);
        normalize_eigenfunction(current, V2, g);
        double quotient = threshold_quotient(current, lambda1, V2, g);
        bool converged = false;
        int it = 0;
        while (it < opts.max_iter && !converged) {
            ++it;
            RealField rhs(g.size());
            for (std::size_t i = 0; i < g.size(); ++i) rhs[i] = V2[i] * current[i];
            current = solve_shifted_laplacian(rhs, lambda1, g);
            symmetrize(current);
            normalize_eigenfunction(current, V2, g);
            const double next = threshold_quotient(current, lambda1, V2, g);
            converged = std::abs(next - quotient) <= opts.tolerance * std::abs(next);
            quotient = next;
        }
        if (!converged) {
            throw ThresholdError("lambda_threshold: inverse iteration did not converge after " +
                                     std::to_string(opts.max_iter) + " iterations (last quotient " +
                                     std::to_string(quotient) + ")",
                                 quotient);
        }
        report.lambda_threshold = quotient;
        report.eigenfunction = std::move(current);
        report.iterations = it;
    }
    report.lambda_extrapolated = report.lambda_threshold;
    if (opts.extrapolate && !opts.dense) {
        // The discrete quotient converges at O(h^2); one refinement removes that term.
        ThresholdOptions fine_opts = opts;
        fine_opts.extrapolate = false;
        const Grid fine(g.half_width(), 2 * g.size() - 1);
        const double fine_value = lambda_threshold(lambda1, lambda2, fine, fine_opts).lambda_threshold;
        report.lambda_extrapolated = (4.0 * fine_value - report.lambda_threshold) / 3.0;
    }
    report.grid_used = g;
    report.lambda1 = lambda1;
    report.lambda2 = lambda2;
    return report;
}

bool tangent_check(const PairField& h, double lambda2, const Grid& g)
{
    const RealField V2 = soliton_V2(lambda2, g);
    const double lhs = inner_j(V2, h.v, lambda2, g);
    RealField cubic(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) cubic[i] = V2[i] * V2[i] * h.v[i];
    const double rhs = 0.75 * integrate(cubic, g);
    return std::abs(lhs - rhs) <= 1e-8 * (1.0 + norm_j_sq(h.v, lambda2, g));
}

RealField project_to_tangent(std::span<const double> h2, double lambda2, const Grid& g)
{
    const RealField V2 = soliton_V2(lambda2, g);
    // Linear functional ell(h) = (V2|h)_2 - 3/4 int V2^2 h, with ell(V2) = -1/4 int V2^3 != 0.
    auto ell = [&](std::span<const double> field) {
        RealField cubic(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) cubic[i] = V2[i] * V2[i] * field[i];
        return inner_j(V2, field, lambda2, g) - 0.75 * integrate(cubic, g);
    };
    return axpy(-ell(h2) / ell(V2), V2, h2);
}

RealField random_even_field(const Grid& g, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
    std::uniform_real_distribution<double> center(0.0, 0.25 * g.half_width());
    std::uniform_real_distribution<double> width(0.5, 3.0);
    RealField field(g.size(), 0.0);
    for (int bump = 0; bump < 4; ++bump) {
        const double a = amplitude(rng);
        const double c = center(rng);
        const double w = width(rng);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double left = (g.x(i) - c) / w;
            const double right = (g.x(i) + c) / w;
            field[i] += a * (std::exp(-left * left) + std::exp(-right * right));
        }
    }
    symmetrize(field);
    return field;
}

SaddleReport saddle_check(const Params& p, const Grid& g, std::uint64_t seed, int samples)
{
    p.validate();
    ThresholdOptions opts;
    opts.extrapolate = false;
    const ThresholdReport threshold = lambda_threshold(p.lambda1, p.lambda2, g, opts);
    const RealField V2 = soliton_V2(p.lambda2, g);
    const RealField zero(g.size(), 0.0);
    const PairField semitrivial{zero, V2};

    SaddleReport report;
    report.lambda_threshold = threshold.lambda_threshold;
    report.direction_value = hess_quadform(semitrivial, {threshold.eigenfunction, zero}, p, g);
    report.v2_direction_value = hess_quadform(semitrivial, {V2, zero}, p, g);
    report.is_saddle = report.direction_value < 0.0;

    std::mt19937_64 rng(seed);
    report.sampled_min = std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        PairField h{random_even_field(g, rng), random_even_field(g, rng)};
        h.v = project_to_tangent(h.v, p.lambda2, g);
        report.sampled_min = std::min(report.sampled_min, hess_quadform(semitrivial, h, p, g));
    }
    report.samples = samples;
    return report;
}

}  // namespace nlskdv

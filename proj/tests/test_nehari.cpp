#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nlskdv/nehari.hpp"
#include "nlskdv/threshold.hpp"
#include "oracles.hpp"

using namespace nlskdv;

namespace {

const Grid& default_grid()
{
    static const Grid g = make_grid(40.0, 4097);
    return g;
}

PairField positive_pair(const Grid& g, std::mt19937_64& rng)
{
    PairField w{oracle::random_bumps(g, rng, 4), oracle::random_bumps(g, rng, 4)};
    for (auto* field : {&w.u, &w.v}) {
        for (auto& value : *field) value = std::abs(value);
    }
    return w;
}

}  // namespace

TEST(NehariScale, ClosedFormRays)
{
    const Grid& g = default_grid();
    const RealField zero(g.size(), 0.0);
    const auto U1 = soliton_U1(1.0, g);
    const auto V2 = soliton_V2(1.0, g);
    const Params p{1.0, 1.0, 1.0};
    // Grid profiles are O(h^2) off the discrete Nehari set.
    EXPECT_NEAR(nehari_scale({U1, zero}, p, g), 1.0, 1e-4);
    EXPECT_NEAR(nehari_scale({scaled(2.0, U1), zero}, p, g), 0.5, 1e-4);
    EXPECT_NEAR(nehari_scale({zero, V2}, p, g), 1.0, 1e-4);

    const auto c = ray_coefficients({U1, zero}, p, g);
    EXPECT_EQ(c.B, 0.0);
    EXPECT_NEAR(c.A / c.C, 1.0, 1e-4);
}

TEST(NehariScale, ExactScalingOfRay)
{
    const Grid& g = default_grid();
    const RealField zero(g.size(), 0.0);
    const auto U1 = soliton_U1(1.0, g);
    const Params p{};
    const double t1 = nehari_scale({U1, zero}, p, g);
    const double t2 = nehari_scale({scaled(2.0, U1), zero}, p, g);
    EXPECT_NEAR(t2, 0.5 * t1, 1e-14);
}

TEST(NehariScale, RejectsDegenerateRays)
{
    const Grid& g = default_grid();
    const RealField zero(g.size(), 0.0);
    const auto V2 = soliton_V2(1.0, g);
    EXPECT_THROW(nehari_scale({zero, zero}, Params{}, g), ProjectionError);
    // Pure negative v has A > 0, B < 0, C = 0: the ray never meets the manifold.
    EXPECT_THROW(nehari_scale({zero, scaled(-1.0, V2)}, Params{}, g), ProjectionError);
}

TEST(Project, FixedPointsAndPureVRay)
{
    const Grid& g = default_grid();
    const RealField zero(g.size(), 0.0);
    const auto V2 = soliton_V2(1.0, g);
    const Params p{1.0, 1.0, 0.5};
    const auto projected = project({zero, scaled(3.0, V2)}, p, g);
    EXPECT_EQ(max_abs(projected.u), 0.0);
    RealField diff(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = projected.v[i] - V2[i];
    EXPECT_LT(max_abs(diff), 1e-4);
}

TEST(Project, RandomPositivePairsLandOnManifold)
{
    const Grid& g = default_grid();
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const Params p{1.0 + 0.1 * trial, 1.0, 0.3 * trial};
        const auto w = project(positive_pair(g, rng), p, g);
        const double scale = pair_norm_sq(w, p, g);
        EXPECT_LE(std::abs(psi(w, p, g)), 1e-10 * scale);
        EXPECT_NEAR(phi(w, p, g).phi, restricted_F(w, p, g), 1e-10 * restricted_F(w, p, g));
    }
}

TEST(Project, DependsOnlyOnTheRay)
{
    const Grid& g = default_grid();
    std::mt19937_64 rng(21);
    const Params p{1.0, 1.0, 2.0};
    const auto w = positive_pair(g, rng);
    const auto a = project(w, p, g);
    for (double c : {0.01, 0.7, 3.0, 250.0}) {
        const auto b = project(scaled(c, w), p, g);
        RealField du(g.size()), dv(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            du[i] = a.u[i] - b.u[i];
            dv[i] = a.v[i] - b.v[i];
        }
        EXPECT_LE(std::max(max_abs(du), max_abs(dv)), 1e-12 * (1.0 + max_abs(a)));
    }
}

TEST(Project, PsiRayDerivativeIdentity)
{
    const Grid& g = default_grid();
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Params p{1.0, 0.5 + 0.2 * trial, 1.0};
        const auto w = project(positive_pair(g, rng), p, g);
        const double t = 1e-5;
        const double derivative =
            (psi(scaled(1.0 + t, w), p, g) - psi(scaled(1.0 - t, w), p, g)) / (2.0 * t);
        RealField quartic(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) quartic[i] = std::pow(w.u[i], 4);
        const double expected = -pair_norm_sq(w, p, g) - integrate(quartic, g);
        EXPECT_NEAR(derivative / expected, 1.0, 1e-6);
    }
}

TEST(Descent, SemitrivialIsFixedPoint)
{
    const Grid& g = default_grid();
    const RealField zero(g.size(), 0.0);
    const auto V2 = soliton_V2(1.0, g);
    for (double beta : {0.0, 1.0}) {
        const auto result = minimize_on_nehari({zero, V2}, Params{1.0, 1.0, beta}, g);
        EXPECT_TRUE(result.report.converged);
        EXPECT_EQ(max_abs(result.report.profile.u), 0.0);
        EXPECT_NEAR(result.report.phi / 4.8, 1.0, 1e-4);
    }
}

TEST(Descent, CoupledCaseLowersEnergyBelowSemitrivial)
{
    const Grid& g = default_grid();
    const Params p{1.0, 1.0, 1.0};
    DescentOptions opts;
    opts.record_trace = true;
    const auto w0 = project({soliton_U1(1.0, g), soliton_V2(1.0, g)}, p, g);
    const auto result = minimize_on_nehari(w0, p, g, opts);
    ASSERT_TRUE(result.report.converged) << result.report.message;
    EXPECT_LE(result.report.residual_inf, 1e-8);
    EXPECT_LT(result.report.phi, 4.8);
    EXPECT_TRUE(result.report.positive);
    EXPECT_TRUE(result.report.even);

    ASSERT_GE(result.F_trace.size(), 2u);
    for (std::size_t k = 1; k < result.F_trace.size(); ++k) {
        const double prev = result.F_trace[k - 1];
        EXPECT_LE(result.F_trace[k], prev + 8.0 * std::numeric_limits<double>::epsilon() * prev);
    }
    EXPECT_GT(result.report.F, 0.0);
    EXPECT_GT(pair_norm_sq(result.report.profile, p, g), 1.0);
}

TEST(Descent, DecoupledCaseConverges)
{
    const Grid& g = default_grid();
    const Params p{1.0, 1.0, 0.0};
    const auto w0 = project({soliton_U1(1.0, g), soliton_V2(1.0, g)}, p, g);
    const auto result = minimize_on_nehari(w0, p, g);
    EXPECT_TRUE(result.report.converged);
    EXPECT_LE(result.report.residual_inf, 1e-8);
}

TEST(Descent, EvenStartStaysEven)
{
    const Grid g = make_grid(30.0, 1025);
    const Params p{1.0, 1.0, 1.5};
    DescentOptions opts;
    opts.max_iter = 20;
    std::mt19937_64 rng(4);
    PairField w0{random_even_field(g, rng), random_even_field(g, rng)};
    for (auto* f : {&w0.u, &w0.v}) {
        for (auto& value : *f) value = std::abs(value);
    }
    const auto result = minimize_on_nehari(w0, p, g, opts);
    EXPECT_EQ(evenness_defect(result.report.profile.u), 0.0);
    EXPECT_EQ(evenness_defect(result.report.profile.v), 0.0);
}

TEST(GroundState, StrongCouplingGivesPositiveEvenCoupledState)
{
    const Grid& g = default_grid();
    const auto report = ground_state(Params{1.0, 1.0, 1.0}, g);
    const auto& best = report.best;
    ASSERT_TRUE(best.converged) << best.message;
    EXPECT_LE(best.residual_inf, 1e-8);
    EXPECT_TRUE(best.positive);
    EXPECT_LE(std::max(evenness_defect(best.profile.u), evenness_defect(best.profile.v)), 1e-12);
    EXPECT_LT(best.phi, 4.0 / 3.0);
    EXPECT_TRUE(report.below_semitrivial);
    EXPECT_GT(report.margin, 0.0);
    EXPECT_NEAR(report.margin, std::min(report.phi_semitrivial_u1, report.phi_semitrivial_v2) - best.phi,
                1e-14);
    EXPECT_FALSE(report.candidates.empty());
    for (const auto& c : report.candidates) {
        if (c.converged) EXPECT_GE(c.phi, best.phi - 1e-10);
    }
}

TEST(GroundState, UnequalLambdas)
{
    const Grid g = make_grid(default_half_width(1.0, 2.0), 4097);
    const auto report = ground_state(Params{1.0, 2.0, 5.0}, g);
    EXPECT_TRUE(report.best.converged);
    EXPECT_TRUE(report.best.positive);
    EXPECT_LT(report.best.phi, report.phi_semitrivial_v2);
    EXPECT_TRUE(report.below_semitrivial);
}

TEST(GroundState, DecoupledCaseIsNotFlagged)
{
    const Grid& g = default_grid();
    const auto report = ground_state(Params{1.0, 1.0, 0.0}, g);
    EXPECT_TRUE(report.best.converged);
    EXPECT_FALSE(report.below_semitrivial);
    EXPECT_NEAR(report.best.phi, report.phi_semitrivial_u1, 1e-4);
    EXPECT_FALSE(report.best.positive);
}

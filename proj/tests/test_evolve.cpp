#include <gtest/gtest.h>

#include <cmath>

#include "nlskdv/evolve.hpp"
#include "nlskdv/nehari.hpp"

using namespace nlskdv;

namespace {

const Grid& coarse_grid()
{
    static const Grid g = make_grid(40.0, 1025);
    return g;
}

EvolutionState kdv_only(const Grid& g)
{
    const RealField zero(g.size(), 0.0);
    return reconstruct(zero, soliton_V2(1.0, g), Params{1.0, 1.0, 0.0}, 0.5, 0.75, g);
}

EvolutionState nls_only(const Grid& g)
{
    const RealField zero(g.size(), 0.0);
    return reconstruct(soliton_U1(1.0, g), zero, Params{1.0, 1.0, 0.0}, 0.5, 0.75, g);
}

double centroid(const RealField& w, const PeriodicGrid& pg)
{
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        num += pg.x(j) * w[j];
        den += w[j];
    }
    return num / den;
}

}  // namespace

TEST(Reconstruct, ModulusAndLongWave)
{
    const Grid& g = coarse_grid();
    const auto U1 = soliton_U1(1.0, g);
    const auto V2 = soliton_V2(1.0, g);
    const auto s = reconstruct(U1, V2, Params{1.0, 1.0, 1.0}, 0.5, 0.75, g);
    ASSERT_EQ(s.f.size(), g.size() - 1);
    for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        EXPECT_NEAR(std::abs(s.f[j]), U1[j], 1e-15);
        EXPECT_EQ(s.g[j], V2[j]);
    }
    EXPECT_EQ(s.t, 0.0);
}

TEST(Reconstruct, PureKdvAndMismatch)
{
    const Grid& g = coarse_grid();
    const auto s = kdv_only(g);
    for (const auto& value : s.f) EXPECT_EQ(value, Complex(0.0, 0.0));
    const RealField zero(g.size(), 0.0);
    EXPECT_THROW(reconstruct(zero, zero, Params{1.0, 1.0, 0.0}, 1.0, 0.75, g), std::invalid_argument);
    EXPECT_THROW(reconstruct(zero, RealField(3, 0.0), Params{1.0, 1.0, 0.0}, 0.5, 0.75, g),
                 std::invalid_argument);
}

TEST(PeriodicGrid, DropsLastNode)
{
    const Grid g = make_grid(10.0, 5);
    const auto pg = periodic_from(g);
    EXPECT_EQ(pg.size, 4u);
    EXPECT_EQ(pg.spacing, 5.0);
    EXPECT_EQ(pg.x(0), -10.0);
    EXPECT_EQ(pg.x(3), 5.0);
}

TEST(DefaultTimeStep, Formula)
{
    EXPECT_DOUBLE_EQ(default_time_step(0.01953125), 0.5 * 0.01953125 * 0.01953125);
    EXPECT_DOUBLE_EQ(default_time_step(0.1), 1e-3);
}

TEST(Evolve, KdvSolitonTranslates)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    auto s = kdv_only(g);
    Evolver evolver(pg, 0.0);
    const auto series = evolver.run(s, 5.0, 0.005, 200);
    EXPECT_NEAR(series.back().t, 5.0, 1e-12);
    EXPECT_LE(series.back().profile_error_g, 1e-3);
    EXPECT_NEAR(centroid(s.g, pg), 5.0, 1e-3);
    EXPECT_EQ(series.back().mass_f, 0.0);
}

TEST(Evolve, NlsSolitonTranslates)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    auto s = nls_only(g);
    Evolver evolver(pg, 0.0);
    const auto series = evolver.run(s, 5.0, 0.005, 200);
    EXPECT_LE(series.back().profile_error_f, 1e-3);
    RealField modulus(s.f.size());
    for (std::size_t j = 0; j < s.f.size(); ++j) modulus[j] = std::norm(s.f[j]);
    EXPECT_NEAR(centroid(modulus, pg), 5.0, 1e-3);
}

TEST(Evolve, StrangSplittingIsSecondOrder)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    auto error_at = [&](double dt) {
        auto s = kdv_only(g);
        Evolver evolver(pg, 0.0);
        return evolver.run(s, 2.0, dt, 1000000).back().profile_error_g;
    };
    const double e1 = error_at(0.02), e2 = error_at(0.01), e3 = error_at(0.005);
    EXPECT_NEAR(e1 / e2, 4.0, 0.4);
    EXPECT_NEAR(e2 / e3, 4.0, 0.4);
}

TEST(Evolve, ConservesMassAndMean)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    const auto s0 = reconstruct(soliton_U1(1.0, g), soliton_V2(1.0, g), Params{1.0, 1.0, 0.0}, 0.5,
                                0.75, g);
    const auto series = run(s0, 2.0, 0.002, 0.8, pg, 100);
    const double m0 = series.front().mass_f;
    for (const auto& d : series) {
        EXPECT_LE(std::abs(d.mass_f - m0) / m0, 1e-10);
        EXPECT_LE(std::abs(d.mean_g - series.front().mean_g), 1e-10);
    }
}

TEST(Evolve, PhaseCovariance)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    const auto s0 = reconstruct(soliton_U1(1.0, g), soliton_V2(1.0, g), Params{1.0, 1.0, 0.0}, 0.5,
                                0.75, g);
    auto rotated = s0;
    const Complex phase = std::polar(1.0, 0.9);
    for (auto& value : rotated.f) value *= phase;
    auto a = s0;
    Evolver evolver(pg, 0.5);
    for (int n = 0; n < 200; ++n) {
        evolver.step(a, 0.005);
        evolver.step(rotated, 0.005);
    }
    for (std::size_t j = 0; j < a.f.size(); ++j) {
        EXPECT_NEAR(std::abs(a.f[j]), std::abs(rotated.f[j]), 1e-12);
        EXPECT_NEAR(a.g[j], rotated.g[j], 1e-12);
    }
}

TEST(Evolve, FreeStepMatchesMemberStep)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    const auto s0 = nls_only(g);
    const auto next = step(s0, 0.01, 0.0, pg);
    auto member = s0;
    Evolver evolver(pg, 0.0);
    evolver.step(member, 0.01);
    EXPECT_EQ(next.f, member.f);
    EXPECT_EQ(next.g, member.g);
    EXPECT_NEAR(next.t, 0.01, 1e-16);
}

TEST(Evolve, CoupledGroundStateTravels)
{
    const Grid& g = coarse_grid();
    const Params p{1.0, 1.0, 1.0};
    const auto ground = ground_state(p, g);
    ASSERT_TRUE(ground.best.converged);
    const auto s0 = reconstruct(ground.best.profile.u, ground.best.profile.v, p, 0.5, 0.75, g);
    const auto series = run(s0, 5.0, 0.005, p.beta, periodic_from(g), 500);
    EXPECT_LE(series.back().profile_error_f, 1e-2);
    EXPECT_LE(series.back().profile_error_g, 1e-2);
}

TEST(Evolve, WrongCouplingSignDoesNotTravel)
{
    const Grid& g = coarse_grid();
    const Params p{1.0, 1.0, 1.0};
    const auto ground = ground_state(p, g);
    const auto s0 = reconstruct(ground.best.profile.u, ground.best.profile.v, p, 0.5, 0.75, g);
    const auto series = run(s0, 5.0, 0.005, -p.beta, periodic_from(g), 500);
    EXPECT_GT(std::max(series.back().profile_error_f, series.back().profile_error_g), 0.05);
}

TEST(Evolve, BlowUpIsReported)
{
    const Grid& g = coarse_grid();
    const auto pg = periodic_from(g);
    auto s = nls_only(g);
    for (auto& value : s.g) value = 1e9;
    Evolver evolver(pg, 1.0);
    EXPECT_THROW(evolver.run(s, 1.0, 0.01, 10), BlowUpError);
}

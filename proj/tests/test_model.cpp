#include <gtest/gtest.h>

#include <cmath>

#include "nlskdv/energy.hpp"
#include "nlskdv/model.hpp"

using namespace nlskdv;

TEST(Solitons, PeakValues)
{
    const Grid g = make_grid(40.0, 4097);
    EXPECT_DOUBLE_EQ(soliton_U1(1.0, g)[g.center()], std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(soliton_U1(4.0, g)[g.center()], std::sqrt(8.0));
    EXPECT_DOUBLE_EQ(soliton_V2(1.0, g)[g.center()], 3.0);
    EXPECT_DOUBLE_EQ(soliton_V2(2.0, g)[g.center()], 6.0);
}

TEST(Solitons, EvenAndPositive)
{
    const Grid g = make_grid(40.0, 4097);
    for (double lambda : {0.5, 1.0, 3.0}) {
        const auto u = soliton_U1(lambda, g);
        const auto v = soliton_V2(lambda, g);
        EXPECT_EQ(evenness_defect(u), 0.0);
        EXPECT_EQ(evenness_defect(v), 0.0);
        EXPECT_GT(min_value(u), 0.0);
        EXPECT_GT(min_value(v), 0.0);
    }
}

TEST(Solitons, ScalingIdentity)
{
    const Grid g = make_grid(20.0, 801);
    const auto v = soliton_V2(4.0, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(v[i], 8.0 * reference_V(2.0 * g.x(i)), 4e-16 * std::max(1.0, v[i]));
    }
}

TEST(Solitons, RejectNonPositiveLambda)
{
    const Grid g = make_grid(10.0, 17);
    EXPECT_THROW(soliton_U1(0.0, g), std::invalid_argument);
    EXPECT_THROW(soliton_V2(-2.0, g), std::invalid_argument);
}

namespace {

// Sup-norm of the stationary residual of the decoupled profiles.
std::pair<double, double> profile_residuals(std::size_t n, double beta)
{
    const Grid g = make_grid(40.0, n);
    const Params p{1.0, 1.0, beta};
    const RealField zero(n, 0.0);
    const auto ru = residual({soliton_U1(1.0, g), zero}, Params{1.0, 1.0, 0.0}, g);
    const auto rv = residual({zero, soliton_V2(1.0, g)}, p, g);
    return {max_abs(ru.u), max_abs(rv.v)};
}

}  // namespace

TEST(Solitons, ResidualsConvergeAtSecondOrder)
{
    const auto coarse = profile_residuals(2049, 0.0);
    const auto fine = profile_residuals(4097, 0.0);
    EXPECT_NEAR(coarse.first / fine.first, 4.0, 0.05);
    EXPECT_NEAR(coarse.second / fine.second, 4.0, 0.05);
}

TEST(Solitons, SemitrivialSolvesForEveryBeta)
{
    const Grid g = make_grid(40.0, 4097);
    const RealField zero(g.size(), 0.0);
    for (double beta : {-3.0, 0.0, 0.7, 12.0}) {
        const auto r = residual({zero, soliton_V2(1.0, g)}, Params{1.0, 1.0, beta}, g);
        EXPECT_EQ(max_abs(r.u), 0.0);
        EXPECT_LT(max_abs(r.v), 1e-4);
    }
}

TEST(WaveParams, Map)
{
    const Params a = wave_params(0.5, 0.75);
    EXPECT_DOUBLE_EQ(a.lambda1, 1.0);
    EXPECT_DOUBLE_EQ(a.lambda2, 1.0);
    const Params b = wave_params(1.0, 0.0);
    EXPECT_DOUBLE_EQ(b.lambda1, 1.0);
    EXPECT_DOUBLE_EQ(b.lambda2, 2.0);
    EXPECT_DOUBLE_EQ(make_wave(1.0, 0.0).c, 2.0);
    EXPECT_THROW(wave_params(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(wave_params(1.0, -2.0), std::invalid_argument);
}

TEST(ParamsValidation, NamesField)
{
    try {
        Params{-1.0, 1.0, 0.0}.validate();
        FAIL() << "expected throw";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("lambda1"), std::string::npos);
    }
    EXPECT_THROW((Params{1.0, 0.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((Params{1.0, 1.0, -5.0}.validate()));
}

#pragma once

// Split-step Fourier integration of the short-wave / long-wave system
//
//   i f_t + f_xx + a f g + |f|^2 f = 0
//   g_t + g_xxx + g g_x + (a/2) (|f|^2)_x = 0
//
// on the periodic box [-L, L). The coupling a is passed explicitly; with
// a = +beta, e^{i(wt+kx)} u(x-ct), v(x-ct) is an exact traveling wave whenever
// (u, v) solves the stationary system with lambda1 = k^2 + w, lambda2 = c = 2k.

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "nlskdv/grid.hpp"
#include "nlskdv/model.hpp"

namespace nlskdv {

using Complex = std::complex<double>;
using ComplexField = std::vector<Complex>;

class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// [-L, L) with N = n - 1 nodes; the node at +L of the stationary grid is dropped.
struct PeriodicGrid {
    double half_width;
    std::size_t size;
    double spacing;

    double x(std::size_t j) const noexcept
    {
        return -half_width + static_cast<double>(j) * spacing;
    }
};

PeriodicGrid periodic_from(const Grid& g);

struct EvolutionState {
    ComplexField f;  // short wave
    RealField g;     // long wave
    double t = 0.0;
};

struct EvolutionDiagnostics {
    double t = 0.0;
    double mass_f = 0.0;           // int |f|^2
    double mean_g = 0.0;           // int g
    double profile_error_f = 0.0;  // min over shifts of || |f(t)| - |f(0)|(. - s) ||_2
    double profile_error_g = 0.0;
};

/// f(x, 0) = e^{ikx} u(x), g(x, 0) = v(x). Throws std::invalid_argument when
/// (k, omega) does not reproduce p.lambda1, p.lambda2 to 1e-12.
EvolutionState reconstruct(std::span<const double> u, std::span<const double> v, const Params& p,
                           double k, double omega, const Grid& g);

/// min(0.5 h^2, 1e-3).
double default_time_step(double spacing);

/// Strang splitting: exact Fourier propagation of f_xx and g_xxx for dt/2,
/// a fourth-order Runge-Kutta step of the nonlinear and coupling terms with
/// 2/3-rule dealiasing, then another exact half step.
class Evolver {
public:
    Evolver(PeriodicGrid grid, double coupling, bool dealias = true);
    ~Evolver();
    Evolver(const Evolver&) = delete;
    Evolver& operator=(const Evolver&) = delete;
    Evolver(Evolver&&) noexcept;
    Evolver& operator=(Evolver&&) noexcept;

    /// Throws BlowUpError on non-finite or runaway amplitudes.
    void step(EvolutionState& s, double dt);

    /// Advances s to time s.t + T with about T/dt steps (dt is adjusted so the
    /// count is integral) and samples diagnostics every `sample_every` steps,
    /// including the initial and final states. Profile errors are measured
    /// against the state passed in.
    std::vector<EvolutionDiagnostics> run(EvolutionState& s, double T, double dt,
                                          int sample_every = 100);

    double mass(const EvolutionState& s) const;
    double mean(const EvolutionState& s) const;

    /// min over real shifts s of the L2 distance between `current` and
    /// `reference(. - s)`; the reference is shifted spectrally.
    double shifted_distance(std::span<const double> current, std::span<const double> reference);

    const PeriodicGrid& grid() const noexcept { return grid_; }

private:
    struct Workspace;
    PeriodicGrid grid_;
    double coupling_;
    bool dealias_;
    std::unique_ptr<Workspace> ws_;
};

/// One step with a throwaway Evolver.
EvolutionState step(const EvolutionState& s, double dt, double coupling, const PeriodicGrid& grid);

/// Convenience wrapper around Evolver::run.
std::vector<EvolutionDiagnostics> run(EvolutionState s0, double T, double dt, double coupling,
                                      const PeriodicGrid& grid, int sample_every = 100);

}  // namespace nlskdv

#include "nlskdv/evolve.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <string>

namespace nlskdv {

PeriodicGrid periodic_from(const Grid& g)
{
    return {g.half_width(), g.size() - 1, g.spacing()};
}

double default_time_step(double spacing) { return std::min(0.5 * spacing * spacing, 1e-3); }

EvolutionState reconstruct(std::span<const double> u, std::span<const double> v, const Params& p,
                           double k, double omega, const Grid& g)
{
    const Params wave = wave_params(k, omega, p.beta);
    if (std::abs(wave.lambda1 - p.lambda1) > 1e-12 || std::abs(wave.lambda2 - p.lambda2) > 1e-12) {
        throw std::invalid_argument(
            "reconstruct: (k, omega) gives lambda1 = " + std::to_string(wave.lambda1) +
            ", lambda2 = " + std::to_string(wave.lambda2) + " but the profile was solved with lambda1 = " +
            std::to_string(p.lambda1) + ", lambda2 = " + std::to_string(p.lambda2));
    }
    if (u.size() != g.size() || v.size() != g.size()) {
        throw std::invalid_argument("reconstruct: profile does not match grid");
    }
    const std::size_t N = g.size() - 1;
    EvolutionState s;
    s.f.resize(N);
    s.g.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
        s.f[j] = std::polar(u[j], k * g.x(j));
        s.g[j] = v[j];
    }
    s.t = 0.0;
    return s;
}

struct Evolver::Workspace {
    std::size_t N;
    fftw_complex* in;
    fftw_complex* out;
    fftw_plan forward;
    fftw_plan backward;
    std::vector<double> kappa;      // angular wavenumbers
    std::vector<double> odd_kappa;  // kappa with the Nyquist mode zeroed
    std::vector<double> mask;       // 2/3-rule filter (all ones without dealiasing)
    double cached_half_dt = -1.0;
    ComplexField f_propagator;
    ComplexField g_propagator;

    Workspace(const PeriodicGrid& grid, bool dealias) : N(grid.size)
    {
        in = fftw_alloc_complex(N);
        out = fftw_alloc_complex(N);
        forward = fftw_plan_dft_1d(static_cast<int>(N), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        backward = fftw_plan_dft_1d(static_cast<int>(N), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
        kappa.resize(N);
        odd_kappa.resize(N);
        mask.resize(N);
        const double base = std::numbers::pi / grid.half_width;  // 2 pi / (2L)
        for (std::size_t j = 0; j < N; ++j) {
            const auto signed_index =
                j < (N + 1) / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(N);
            kappa[j] = base * signed_index;
            odd_kappa[j] = (N % 2 == 0 && j == N / 2) ? 0.0 : kappa[j];
            mask[j] = (!dealias || 3.0 * std::abs(signed_index) <= static_cast<double>(N)) ? 1.0 : 0.0;
        }
    }

    ~Workspace()
    {
        fftw_destroy_plan(forward);
        fftw_destroy_plan(backward);
        fftw_free(in);
        fftw_free(out);
    }

    void transform(const ComplexField& src, ComplexField& dst, bool inverse)
    {
        std::copy(src.begin(), src.end(), reinterpret_cast<Complex*>(in));
        fftw_execute(inverse ? backward : forward);
        dst.assign(reinterpret_cast<Complex*>(out), reinterpret_cast<Complex*>(out) + N);
        if (inverse) {
            const double scale = 1.0 / static_cast<double>(N);
            for (auto& value : dst) value *= scale;
        }
    }

    void update_propagators(double half_dt)
    {
        if (half_dt == cached_half_dt) return;
        f_propagator.resize(N);
        g_propagator.resize(N);
        for (std::size_t j = 0; j < N; ++j) {
            const double k = kappa[j];
            const double ko = odd_kappa[j];
            // f_t = i f_xx  and  g_t = -g_xxx.
            f_propagator[j] = std::polar(1.0, -k * k * half_dt);
            g_propagator[j] = std::polar(1.0, ko * ko * ko * half_dt);
        }
        cached_half_dt = half_dt;
    }
};

Evolver::Evolver(PeriodicGrid grid, double coupling, bool dealias)
    : grid_(grid), coupling_(coupling), dealias_(dealias),
      ws_(std::make_unique<Workspace>(grid, dealias))
{
    if (grid.size < 4) throw std::invalid_argument("Evolver: periodic grid too small");
}

Evolver::~Evolver() = default;
Evolver::Evolver(Evolver&&) noexcept = default;
Evolver& Evolver::operator=(Evolver&&) noexcept = default;

namespace {

struct Rates {
    ComplexField f;
    RealField g;
};

}  // namespace

void Evolver::step(EvolutionState& s, double dt)
{
    if (!(dt > 0.0)) throw std::invalid_argument("Evolver::step: dt must be positive");
    Workspace& ws = *ws_;
    const std::size_t N = ws.N;
    if (s.f.size() != N || s.g.size() != N) {
        throw std::invalid_argument("Evolver::step: state does not match grid");
    }
    ws.update_propagators(0.5 * dt);

    ComplexField spectrum(N), buffer(N);
    auto linear_half_step = [&](EvolutionState& state) {
        ws.transform(state.f, spectrum, false);
        for (std::size_t j = 0; j < N; ++j) spectrum[j] *= ws.f_propagator[j];
        ws.transform(spectrum, state.f, true);

        for (std::size_t j = 0; j < N; ++j) buffer[j] = state.g[j];
        ws.transform(buffer, spectrum, false);
        for (std::size_t j = 0; j < N; ++j) spectrum[j] *= ws.g_propagator[j];
        ws.transform(spectrum, buffer, true);
        for (std::size_t j = 0; j < N; ++j) state.g[j] = buffer[j].real();
    };

    const double a = coupling_;
    // f_t = i (a g + |f|^2) f,  g_t = -d/dx (g^2/2 + a |f|^2 / 2).
    auto rates = [&](const ComplexField& f, const RealField& g) {
        Rates r{ComplexField(N), RealField(N)};
        ComplexField product(N), flux(N);
        for (std::size_t j = 0; j < N; ++j) {
            const double density = std::norm(f[j]);
            product[j] = Complex(0.0, 1.0) * (a * g[j] + density) * f[j];
            flux[j] = 0.5 * g[j] * g[j] + 0.5 * a * density;
        }
        ws.transform(product, spectrum, false);
        if (dealias_) {
            for (std::size_t j = 0; j < N; ++j) spectrum[j] *= ws.mask[j];
        }
        ws.transform(spectrum, r.f, true);

        ws.transform(flux, spectrum, false);
        for (std::size_t j = 0; j < N; ++j) {
            spectrum[j] *= Complex(0.0, -ws.odd_kappa[j] * ws.mask[j]);
        }
        ws.transform(spectrum, buffer, true);
        for (std::size_t j = 0; j < N; ++j) r.g[j] = buffer[j].real();
        return r;
    };

    linear_half_step(s);

    const ComplexField f0 = s.f;
    const RealField g0 = s.g;
    auto stage = [&](const Rates& k, double weight) {
        ComplexField f(N);
        RealField g(N);
        for (std::size_t j = 0; j < N; ++j) {
            f[j] = f0[j] + weight * dt * k.f[j];
            g[j] = g0[j] + weight * dt * k.g[j];
        }
        return rates(f, g);
    };
    const Rates k1 = rates(f0, g0);
    const Rates k2 = stage(k1, 0.5);
    const Rates k3 = stage(k2, 0.5);
    const Rates k4 = stage(k3, 1.0);
    for (std::size_t j = 0; j < N; ++j) {
        s.f[j] = f0[j] + dt / 6.0 * (k1.f[j] + 2.0 * k2.f[j] + 2.0 * k3.f[j] + k4.f[j]);
        s.g[j] = g0[j] + dt / 6.0 * (k1.g[j] + 2.0 * k2.g[j] + 2.0 * k3.g[j] + k4.g[j]);
    }

    linear_half_step(s);
    s.t += dt;

    for (std::size_t j = 0; j < N; ++j) {
        const double magnitude = std::max(std::abs(s.f[j]), std::abs(s.g[j]));
        if (!std::isfinite(magnitude) || magnitude > 1e8) {
            throw BlowUpError("evolution blew up at t = " + std::to_string(s.t), s.t);
        }
    }
}

double Evolver::mass(const EvolutionState& s) const
{
    double sum = 0.0;
    for (const auto& value : s.f) sum += std::norm(value);
    return sum * grid_.spacing;
}

double Evolver::mean(const EvolutionState& s) const
{
    double sum = 0.0;
    for (double value : s.g) sum += value;
    return sum * grid_.spacing;
}

double Evolver::shifted_distance(std::span<const double> current, std::span<const double> reference)
{
    Workspace& ws = *ws_;
    const std::size_t N = ws.N;
    const double h = grid_.spacing;
    ComplexField ref(reference.begin(), reference.end()), cur(current.begin(), current.end());
    ComplexField ref_hat(N), cur_hat(N), shifted(N);
    ws.transform(ref, ref_hat, false);
    ws.transform(cur, cur_hat, false);

    // Integer shift from the circular cross-correlation peak.
    ComplexField corr_hat(N), corr(N);
    for (std::size_t j = 0; j < N; ++j) corr_hat[j] = cur_hat[j] * std::conj(ref_hat[j]);
    ws.transform(corr_hat, corr, true);
    std::size_t best = 0;
    for (std::size_t j = 1; j < N; ++j) {
        if (corr[j].real() > corr[best].real()) best = j;
    }
    double center = static_cast<double>(best) * h;
    if (best > N / 2) center -= 2.0 * grid_.half_width;

    auto distance = [&](double shift) {
        for (std::size_t j = 0; j < N; ++j) {
            shifted[j] = ref_hat[j] * std::polar(1.0, -ws.odd_kappa[j] * shift);
        }
        ComplexField back(N);
        ws.transform(shifted, back, true);
        double sum = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double diff = current[j] - back[j].real();
            sum += diff * diff;
        }
        return std::sqrt(sum * h);
    };
    const auto [shift, value] =
        boost::math::tools::brent_find_minima(distance, center - 1.5 * h, center + 1.5 * h, 52);
    (void)shift;
    return value;
}

std::vector<EvolutionDiagnostics> Evolver::run(EvolutionState& s, double T, double dt, int sample_every)
{
    if (!(T >= 0.0)) throw std::invalid_argument("Evolver::run: T must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("Evolver::run: dt must be positive");
    if (sample_every < 1) sample_every = 1;
    const auto steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    const double step_size = steps > 0 ? T / static_cast<double>(steps) : dt;

    RealField reference_f(s.f.size());
    for (std::size_t j = 0; j < s.f.size(); ++j) reference_f[j] = std::abs(s.f[j]);
    const RealField reference_g = s.g;

    std::vector<EvolutionDiagnostics> series;
    auto sample = [&]() {
        EvolutionDiagnostics d;
        d.t = s.t;
        d.mass_f = mass(s);
        d.mean_g = mean(s);
        RealField modulus(s.f.size());
        for (std::size_t j = 0; j < s.f.size(); ++j) modulus[j] = std::abs(s.f[j]);
        d.profile_error_f = shifted_distance(modulus, reference_f);
        d.profile_error_g = shifted_distance(s.g, reference_g);
        series.push_back(d);
    };

    sample();
    for (long n = 1; n <= steps; ++n) {
        step(s, step_size);
        if (n % sample_every == 0 || n == steps) sample();
    }
    return series;
}

EvolutionState step(const EvolutionState& s, double dt, double coupling, const PeriodicGrid& grid)
{
    Evolver evolver(grid, coupling);
    EvolutionState next = s;
    evolver.step(next, dt);
    return next;
}

std::vector<EvolutionDiagnostics> run(EvolutionState s0, double T, double dt, double coupling,
                                      const PeriodicGrid& grid, int sample_every)
{
    Evolver evolver(grid, coupling);
    return evolver.run(s0, T, dt, sample_every);
}

}  // namespace nlskdv

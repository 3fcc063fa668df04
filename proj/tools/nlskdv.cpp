// nlskdv: command-line front end.
//
//   nlskdv threshold|ground|continue|evolve|energy --config cfg.json
//          [--lambda1 X --lambda2 X --beta X --L X --n N --out DIR]
//
// Exit codes: 0 success, 1 configuration error, 2 solver non-convergence,
// 3 runtime blow-up.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "config.hpp"
#include "nlskdv/continuation.hpp"
#include "nlskdv/evolve.hpp"
#include "nlskdv/io.hpp"
#include "nlskdv/threshold.hpp"

namespace fs = std::filesystem;
using namespace nlskdv;
using cli::ConfigError;
using cli::RunConfig;

namespace {

enum ExitCode : int { kOk = 0, kConfig = 1, kSolver = 2, kBlowUp = 3 };

struct Overrides {
    std::optional<double> lambda1, lambda2, beta, L, beta_target, T, dt, coupling, k, omega;
    std::optional<std::size_t> n;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out, initial, profile_u, profile_v;
};

RunConfig load_config(const std::string& command, const std::string& path, const Overrides& o)
{
    RunConfig c;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file " + path);
        Json j;
        try {
            j = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
        }
        c = cli::config_from_json(j);
        if (!c.command.empty() && c.command != command) {
            throw ConfigError("config command '" + c.command + "' does not match subcommand '" +
                              command + "'");
        }
    }
    c.command = command;
    if (o.lambda1) c.params.lambda1 = *o.lambda1;
    if (o.lambda2) c.params.lambda2 = *o.lambda2;
    if (o.beta) c.params.beta = *o.beta;
    if (o.L) c.grid.L = *o.L;
    if (o.n) c.grid.n = *o.n;
    if (o.out) c.out = *o.out;
    if (o.seed) c.solver.seed = *o.seed;
    if (o.beta_target) c.continuation.beta_target = *o.beta_target;
    if (o.steps) c.continuation.steps = *o.steps;
    if (o.T) c.evolution.T = *o.T;
    if (o.dt) c.evolution.dt = *o.dt;
    if (o.coupling) c.evolution.coupling = *o.coupling;
    if (o.k) c.evolution.k = *o.k;
    if (o.omega) c.evolution.omega = *o.omega;
    if (o.initial) c.evolution.initial = *o.initial;
    if (o.profile_u) {
        c.profile_u = *o.profile_u;
        c.evolution.profile_u = *o.profile_u;
    }
    if (o.profile_v) {
        c.profile_v = *o.profile_v;
        c.evolution.profile_v = *o.profile_v;
    }
    c.validate();
    return c;
}

Json base_output(const RunConfig& c)
{
    return Json{{"config", cli::to_json(c)}};
}

void prepare_out(const RunConfig& c) { fs::create_directories(c.out); }

int cmd_threshold(const RunConfig& c)
{
    const Grid g = c.make_grid();
    ThresholdOptions opts;
    opts.dense = c.solver.dense;
    ThresholdReport report;
    try {
        report = lambda_threshold(c.params.lambda1, c.params.lambda2, g, opts);
    } catch (const ThresholdError& e) {
        std::cerr << "threshold: " << e.what() << '\n';
        return kSolver;
    }
    const SaddleReport saddle = saddle_check(c.params, g, c.solver.seed, c.solver.saddle_samples);

    Json out = to_json(report);
    out["saddle"] = to_json(saddle);
    out["seed"] = c.solver.seed;
    out.update(base_output(c));
    prepare_out(c);
    write_json(c.out / "threshold.json", out);
    write_field_csv(c.out / "eigenfunction.csv", g, report.eigenfunction);
    std::cout << "Lambda = " << format_double(report.lambda_extrapolated) << '\n';
    return kOk;
}

GroundStateOptions ground_options(const RunConfig& c)
{
    GroundStateOptions opts;
    opts.descent.tolerance = c.solver.tolerance;
    opts.descent.max_iter = c.solver.max_iter;
    opts.start_weight = c.solver.start_weight;
    opts.newton_polish = c.solver.newton_polish;
    return opts;
}

int cmd_ground(const RunConfig& c)
{
    const Grid g = c.make_grid();
    const GroundStateReport gs = ground_state(c.params, g, ground_options(c));

    Json out = to_json(gs.best);
    out["coupled"] = std::min(max_abs(gs.best.profile.u), max_abs(gs.best.profile.v)) > 1e-8;
    out["comparison"] = Json{{"phi_ground", gs.best.phi},
                             {"phi_semitrivial_v2", gs.phi_semitrivial_v2},
                             {"phi_semitrivial_u1", gs.phi_semitrivial_u1}};
    out["below_semitrivial"] = gs.below_semitrivial;
    out["margin"] = gs.margin;
    Json candidates = Json::array();
    for (const auto& candidate : gs.candidates) candidates.push_back(to_json(candidate));
    out["candidates"] = candidates;
    out["seed"] = c.solver.seed;
    out["profile_u"] = "u.csv";
    out["profile_v"] = "v.csv";
    out.update(base_output(c));

    prepare_out(c);
    write_json(c.out / "ground.json", out);
    write_field_csv(c.out / "u.csv", g, gs.best.profile.u);
    write_field_csv(c.out / "v.csv", g, gs.best.profile.v);
    std::cout << "phi = " << format_double(gs.best.phi) << " (converged: " << gs.best.converged
              << ", positive: " << gs.best.positive << ")\n";
    return gs.best.converged ? kOk : kSolver;
}

int cmd_continue(const RunConfig& c)
{
    const Grid g = c.make_grid();
    ContinuationOptions opts;
    opts.max_halvings = c.continuation.max_halvings;
    Branch branch;
    int code = kOk;
    try {
        branch = continue_in_beta(c.params, c.continuation.beta_target, c.continuation.steps, g, opts);
        if (!branch.complete) code = kSolver;
    } catch (const ContinuationError& e) {
        std::cerr << e.what() << '\n';
        branch = e.partial();
        code = kSolver;
    }

    Json out{{"complete", branch.complete},
             {"last_good_beta", branch.last_good_beta},
             {"points", branch.points.size()},
             {"message", branch.message}};
    Json positive = Json::array();
    for (const auto& point : branch.points) positive.push_back(point.report.positive);
    out["positive"] = positive;
    out.update(base_output(c));
    prepare_out(c);
    write_branch_csv(c.out / "branch.csv", branch.points);
    write_json(c.out / "continue.json", out);
    return code;
}

int cmd_evolve(const RunConfig& c)
{
    const Grid g = c.make_grid();
    const auto& e = c.evolution;
    const double k = e.k.value_or(0.5 * c.params.lambda2);
    const double omega = e.omega.value_or(c.params.lambda1 - k * k);
    const double coupling = e.coupling.value_or(c.params.beta);
    const double dt = e.dt.value_or(default_time_step(g.spacing()));

    PairField profile{RealField(g.size(), 0.0), RealField(g.size(), 0.0)};
    if (e.initial == "files") {
        profile.u = read_field_on_grid(e.profile_u, g);
        profile.v = read_field_on_grid(e.profile_v, g);
    } else if (e.initial == "kdv_soliton") {
        profile.v = soliton_V2(c.params.lambda2, g);
    } else if (e.initial == "nls_soliton") {
        profile.u = soliton_U1(c.params.lambda1, g);
    } else {
        const GroundStateReport gs = ground_state(c.params, g, ground_options(c));
        if (!gs.best.converged) {
            std::cerr << "evolve: ground state did not converge: " << gs.best.message << '\n';
            return kSolver;
        }
        profile = gs.best.profile;
    }

    EvolutionState state;
    try {
        state = reconstruct(profile.u, profile.v, c.params, k, omega, g);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }

    std::vector<EvolutionDiagnostics> series;
    int code = kOk;
    Evolver evolver(periodic_from(g), coupling);
    try {
        series = evolver.run(state, e.T, dt, e.sample_every);
    } catch (const BlowUpError& err) {
        std::cerr << err.what() << '\n';
        code = kBlowUp;
    }

    Json out{{"k", k}, {"omega", omega}, {"c", 2.0 * k}, {"coupling", coupling}, {"dt", dt}};
    if (!series.empty()) {
        const auto& first = series.front();
        double mass_drift = 0.0;
        double mean_drift = 0.0;
        for (const auto& d : series) {
            if (first.mass_f > 0.0) {
                mass_drift = std::max(mass_drift, std::abs(d.mass_f - first.mass_f) / first.mass_f);
            }
            mean_drift = std::max(mean_drift, std::abs(d.mean_g - first.mean_g));
        }
        out["final_t"] = series.back().t;
        out["profile_error_f"] = series.back().profile_error_f;
        out["profile_error_g"] = series.back().profile_error_g;
        out["mass_f_relative_drift"] = mass_drift;
        out["mean_g_absolute_drift"] = mean_drift;
    }
    out["blew_up"] = code == kBlowUp;
    out.update(base_output(c));
    prepare_out(c);
    write_diagnostics_csv(c.out / "diagnostics.csv", series);
    write_json(c.out / "evolve.json", out);
    return code;
}

Json energy_entry(const std::string& name, const PairField& w, const Params& p, const Grid& g)
{
    return Json{{"state", name},
                {"energy", to_json(phi(w, p, g))},
                {"psi", psi(w, p, g)},
                {"F", restricted_F(w, p, g)},
                {"norm_sq", pair_norm_sq(w, p, g)},
                {"residual_inf", residual_inf(w, p, g)}};
}

int cmd_energy(const RunConfig& c)
{
    const Grid g = c.make_grid();
    Json states = Json::array();
    if (!c.profile_u.empty()) {
        const PairField w{read_field_on_grid(c.profile_u, g), read_field_on_grid(c.profile_v, g)};
        states.push_back(energy_entry("profile", w, c.params, g));
    } else {
        const RealField zero(g.size(), 0.0);
        const RealField U1 = soliton_U1(c.params.lambda1, g);
        const RealField V2 = soliton_V2(c.params.lambda2, g);
        states.push_back(energy_entry("semitrivial_v2", {zero, V2}, c.params, g));
        states.push_back(energy_entry("semitrivial_u1", {U1, zero}, c.params, g));
        states.push_back(energy_entry("decoupled_pair", {U1, V2}, c.params, g));
    }
    Json out{{"states", states}};
    out.update(base_output(c));
    prepare_out(c);
    write_json(c.out / "energy.json", out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ground states, bound states and coupling thresholds of the stationary "
                 "NLS-KdV system"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON configuration file");
        sub->add_option("--lambda1", o.lambda1);
        sub->add_option("--lambda2", o.lambda2);
        sub->add_option("--beta", o.beta);
        sub->add_option("--L", o.L, "box half-width");
        sub->add_option("--n", o.n, "node count (odd)");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--seed", o.seed);
    };

    auto* threshold = app.add_subcommand("threshold", "coupling threshold Lambda and saddle test");
    auto* ground = app.add_subcommand("ground", "ground state by Nehari minimization");
    auto* cont = app.add_subcommand("continue", "bound-state branch in beta from (U1, V2)");
    auto* evolve = app.add_subcommand("evolve", "time-evolve a traveling wave");
    auto* energy = app.add_subcommand("energy", "energy breakdown of profiles");
    for (auto* sub : {threshold, ground, cont, evolve, energy}) add_common(sub);
    cont->add_option("--beta-target", o.beta_target);
    cont->add_option("--steps", o.steps);
    evolve->add_option("--T", o.T);
    evolve->add_option("--dt", o.dt);
    evolve->add_option("--coupling", o.coupling);
    evolve->add_option("--k", o.k);
    evolve->add_option("--omega", o.omega);
    evolve->add_option("--initial", o.initial, "ground|files|kdv_soliton|nls_soliton");
    for (auto* sub : {evolve, energy}) {
        sub->add_option("--u", o.profile_u, "u profile CSV");
        sub->add_option("--v", o.profile_v, "v profile CSV");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "evolve" && o.profile_u && !o.initial) o.initial = "files";
    try {
        const RunConfig config = load_config(command, config_path, o);
        if (command == "threshold") return cmd_threshold(config);
        if (command == "ground") return cmd_ground(config);
        if (command == "continue") return cmd_continue(config);
        if (command == "evolve") return cmd_evolve(config);
        return cmd_energy(config);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfig;
    } catch (const ProjectionError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const NewtonError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const std::runtime_error& e) {
        // Missing or malformed input files.
        std::cerr << "input error: " << e.what() << '\n';
        return kConfig;
    }
}

#include "config.hpp"

#include <algorithm>
#include <cmath>

namespace nlskdv::cli {

namespace {

template <typename T>
T read(const Json& value, const std::string& name)
{
    try {
        return value.get<T>();
    } catch (const Json::exception&) {
        throw ConfigError("config field '" + name + "' has the wrong type");
    }
}

const Json& object_at(const Json& value, const std::string& name)
{
    if (!value.is_object()) throw ConfigError("config field '" + name + "' must be an object");
    return value;
}

[[noreturn]] void unknown(const std::string& section, const std::string& key)
{
    throw ConfigError("unknown config field '" + (section.empty() ? key : section + "." + key) + "'");
}

}  // namespace

RunConfig config_from_json(const Json& j)
{
    RunConfig c;
    for (const auto& [key, value] : object_at(j, "<root>").items()) {
        if (key == "command") {
            c.command = read<std::string>(value, key);
        } else if (key == "params") {
            for (const auto& [k, v] : object_at(value, key).items()) {
                if (k == "lambda1") c.params.lambda1 = read<double>(v, "params.lambda1");
                else if (k == "lambda2") c.params.lambda2 = read<double>(v, "params.lambda2");
                else if (k == "beta") c.params.beta = read<double>(v, "params.beta");
                else unknown(key, k);
            }
        } else if (key == "grid") {
            for (const auto& [k, v] : object_at(value, key).items()) {
                if (k == "L") c.grid.L = read<double>(v, "grid.L");
                else if (k == "n") c.grid.n = read<std::size_t>(v, "grid.n");
                else unknown(key, k);
            }
        } else if (key == "solver") {
            for (const auto& [k, v] : object_at(value, key).items()) {
                if (k == "tolerance") c.solver.tolerance = read<double>(v, "solver.tolerance");
                else if (k == "max_iter") c.solver.max_iter = read<int>(v, "solver.max_iter");
                else if (k == "start_weight") c.solver.start_weight = read<double>(v, "solver.start_weight");
                else if (k == "newton_polish") c.solver.newton_polish = read<bool>(v, "solver.newton_polish");
                else if (k == "seed") c.solver.seed = read<std::uint64_t>(v, "solver.seed");
                else if (k == "saddle_samples") c.solver.saddle_samples = read<int>(v, "solver.saddle_samples");
                else if (k == "dense") c.solver.dense = read<bool>(v, "solver.dense");
                else unknown(key, k);
            }
        } else if (key == "continuation") {
            for (const auto& [k, v] : object_at(value, key).items()) {
                if (k == "beta_target") c.continuation.beta_target = read<double>(v, "continuation.beta_target");
                else if (k == "steps") c.continuation.steps = read<int>(v, "continuation.steps");
                else if (k == "max_halvings") c.continuation.max_halvings = read<int>(v, "continuation.max_halvings");
                else unknown(key, k);
            }
        } else if (key == "evolution") {
            for (const auto& [k, v] : object_at(value, key).items()) {
                if (k == "k") c.evolution.k = read<double>(v, "evolution.k");
                else if (k == "omega") c.evolution.omega = read<double>(v, "evolution.omega");
                else if (k == "T") c.evolution.T = read<double>(v, "evolution.T");
                else if (k == "dt") c.evolution.dt = read<double>(v, "evolution.dt");
                else if (k == "coupling") c.evolution.coupling = read<double>(v, "evolution.coupling");
                else if (k == "sample_every") c.evolution.sample_every = read<int>(v, "evolution.sample_every");
                else if (k == "initial") c.evolution.initial = read<std::string>(v, "evolution.initial");
                else if (k == "profile_u") c.evolution.profile_u = read<std::string>(v, "evolution.profile_u");
                else if (k == "profile_v") c.evolution.profile_v = read<std::string>(v, "evolution.profile_v");
                else unknown(key, k);
            }
        } else if (key == "profile_u") {
            c.profile_u = read<std::string>(value, key);
        } else if (key == "profile_v") {
            c.profile_v = read<std::string>(value, key);
        } else if (key == "out") {
            c.out = read<std::string>(value, key);
        } else {
            unknown("", key);
        }
    }
    return c;
}

Grid RunConfig::make_grid() const
{
    return Grid(grid.L.value_or(default_half_width(params.lambda1, params.lambda2)), grid.n);
}

void RunConfig::validate() const
{
    static const char* commands[] = {"threshold", "ground", "continue", "evolve", "energy"};
    if (std::find(std::begin(commands), std::end(commands), command) == std::end(commands)) {
        throw ConfigError("command must be one of threshold|ground|continue|evolve|energy, got '" +
                          command + "'");
    }
    if (!(params.lambda1 > 0.0) || !std::isfinite(params.lambda1)) {
        throw ConfigError("params.lambda1 must be positive");
    }
    if (!(params.lambda2 > 0.0) || !std::isfinite(params.lambda2)) {
        throw ConfigError("params.lambda2 must be positive");
    }
    if (!std::isfinite(params.beta)) throw ConfigError("params.beta must be finite");
    if (grid.L && !(*grid.L > 0.0)) throw ConfigError("grid.L must be positive");
    if (grid.n < 3 || grid.n % 2 == 0) throw ConfigError("grid.n must be odd and >= 3");
    if (!(solver.tolerance > 0.0)) throw ConfigError("solver.tolerance must be positive");
    if (solver.max_iter < 1) throw ConfigError("solver.max_iter must be >= 1");
    if (solver.saddle_samples < 0) throw ConfigError("solver.saddle_samples must be >= 0");
    if (solver.dense && grid.n > 1025) throw ConfigError("solver.dense requires grid.n <= 1025");
    if (!(continuation.beta_target >= 0.0)) throw ConfigError("continuation.beta_target must be >= 0");
    if (continuation.steps < 1) throw ConfigError("continuation.steps must be >= 1");
    if (continuation.max_halvings < 0) throw ConfigError("continuation.max_halvings must be >= 0");
    if (!(evolution.T >= 0.0)) throw ConfigError("evolution.T must be >= 0");
    if (evolution.dt && !(*evolution.dt > 0.0)) throw ConfigError("evolution.dt must be positive");
    if (evolution.sample_every < 1) throw ConfigError("evolution.sample_every must be >= 1");
    const auto& init = evolution.initial;
    if (init != "ground" && init != "files" && init != "kdv_soliton" && init != "nls_soliton") {
        throw ConfigError("evolution.initial must be ground|files|kdv_soliton|nls_soliton");
    }
    if (init == "files" && (evolution.profile_u.empty() || evolution.profile_v.empty())) {
        throw ConfigError("evolution.initial = files needs evolution.profile_u and evolution.profile_v");
    }
    if (evolution.k && !(*evolution.k > 0.0)) throw ConfigError("evolution.k must be positive");
    if (profile_u.empty() != profile_v.empty()) {
        throw ConfigError("profile_u and profile_v must be given together");
    }
}

Json to_json(const RunConfig& c)
{
    const Grid g = c.make_grid();
    Json evolution{{"T", c.evolution.T},
                   {"sample_every", c.evolution.sample_every},
                   {"initial", c.evolution.initial}};
    if (c.evolution.k) evolution["k"] = *c.evolution.k;
    if (c.evolution.omega) evolution["omega"] = *c.evolution.omega;
    if (c.evolution.dt) evolution["dt"] = *c.evolution.dt;
    if (c.evolution.coupling) evolution["coupling"] = *c.evolution.coupling;
    if (!c.evolution.profile_u.empty()) evolution["profile_u"] = c.evolution.profile_u;
    if (!c.evolution.profile_v.empty()) evolution["profile_v"] = c.evolution.profile_v;

    Json j{{"command", c.command},
           {"params", to_json(c.params)},
           {"grid", Json{{"L", g.half_width()}, {"n", g.size()}}},
           {"solver", Json{{"tolerance", c.solver.tolerance},
                           {"max_iter", c.solver.max_iter},
                           {"start_weight", c.solver.start_weight},
                           {"newton_polish", c.solver.newton_polish},
                           {"seed", c.solver.seed},
                           {"saddle_samples", c.solver.saddle_samples},
                           {"dense", c.solver.dense}}},
           {"continuation", Json{{"beta_target", c.continuation.beta_target},
                                 {"steps", c.continuation.steps},
                                 {"max_halvings", c.continuation.max_halvings}}},
           {"evolution", evolution}};
    if (!c.profile_u.empty()) {
        j["profile_u"] = c.profile_u;
        j["profile_v"] = c.profile_v;
    }
    j["out"] = c.out.string();
    return j;
}

}  // namespace nlskdv::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "nlskdv/io.hpp"

namespace nlskdv::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridConfig {
    std::optional<double> L;  // defaults to default_half_width(lambda1, lambda2)
    std::size_t n = kDefaultNodes;
};

struct SolverConfig {
    double tolerance = 1e-8;
    int max_iter = 5000;
    double start_weight = 0.1;
    bool newton_polish = true;
    std::uint64_t seed = 0;
    int saddle_samples = 50;
    bool dense = false;
};

struct ContinuationConfig {
    double beta_target = 0.1;
    int steps = 4;
    int max_halvings = 4;
};

struct EvolutionConfig {
    std::optional<double> k;       // defaults to lambda2 / 2
    std::optional<double> omega;   // defaults to lambda1 - k^2
    double T = 5.0;
    std::optional<double> dt;      // defaults to min(0.5 h^2, 1e-3)
    std::optional<double> coupling;  // defaults to +beta
    int sample_every = 500;
    std::string initial = "ground";  // ground | files | kdv_soliton | nls_soliton
    std::string profile_u;
    std::string profile_v;
};

struct RunConfig {
    std::string command;
    Params params;
    GridConfig grid;
    SolverConfig solver;
    ContinuationConfig continuation;
    EvolutionConfig evolution;
    std::string profile_u;  // energy command input
    std::string profile_v;
    std::filesystem::path out = ".";

    Grid make_grid() const;
    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

/// Parses a configuration object; unknown keys are rejected.
RunConfig config_from_json(const Json& j);

/// The resolved configuration, defaults filled in.
Json to_json(const RunConfig& c);

}  // namespace nlskdv::cli

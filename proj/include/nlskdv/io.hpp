#pragma once

// File formats: fields and tables as CSV with 17 significant digits, reports
// as JSON objects.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "nlskdv/continuation.hpp"
#include "nlskdv/energy.hpp"
#include "nlskdv/evolve.hpp"
#include "nlskdv/nehari.hpp"
#include "nlskdv/threshold.hpp"

namespace nlskdv {

using Json = nlohmann::ordered_json;

std::string format_double(double value);

/// Header "x,value", one row per node.
void write_field_csv(const std::filesystem::path& path, const Grid& g, std::span<const double> w);

struct FieldTable {
    std::vector<double> x;
    RealField values;
};

/// Throws std::runtime_error if the file is missing or malformed.
FieldTable read_field_csv(const std::filesystem::path& path);

/// Reads a field and checks that its nodes coincide with g (to 1e-9 h).
RealField read_field_on_grid(const std::filesystem::path& path, const Grid& g);

Json to_json(const Params& p);
Params params_from_json(const Json& j);
Json to_json(const EnergyBreakdown& e);
Json to_json(const ThresholdReport& r);
Json to_json(const SaddleReport& r);
/// Scalar fields only; the profile is written separately.
Json to_json(const SolveReport& r);

/// Columns beta,phi,residual_inf,distance_to_u0.
void write_branch_csv(const std::filesystem::path& path, const std::vector<BranchPoint>& points);

/// Columns t,mass_f,mean_g,profile_error_f,profile_error_g.
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<EvolutionDiagnostics>& series);

/// Two-space indented JSON with floats at 17 significant digits.
std::string dump_json(const Json& j);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace nlskdv

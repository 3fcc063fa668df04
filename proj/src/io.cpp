#include "nlskdv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlskdv {

std::string format_double(double value)
{
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_field_csv(const std::filesystem::path& path, const Grid& g, std::span<const double> w)
{
    if (w.size() != g.size()) throw std::invalid_argument("write_field_csv: field/grid size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "x,value\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << format_double(g.x(i)) << ',' << format_double(w[i]) << '\n';
    }
}

FieldTable read_field_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open profile file " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,value", 0) != 0) {
        throw std::runtime_error(path.string() + ": expected header 'x,value'");
    }
    FieldTable table;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::runtime_error(path.string() + ": malformed row " + std::to_string(row));
        }
        try {
            table.x.push_back(std::stod(line.substr(0, comma)));
            table.values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ": malformed number in row " + std::to_string(row));
        }
    }
    return table;
}

RealField read_field_on_grid(const std::filesystem::path& path, const Grid& g)
{
    FieldTable table = read_field_csv(path);
    if (table.values.size() != g.size()) {
        throw std::runtime_error(path.string() + ": has " + std::to_string(table.values.size()) +
                                 " nodes, grid has " + std::to_string(g.size()));
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (std::abs(table.x[i] - g.x(i)) > 1e-9 * g.spacing()) {
            throw std::runtime_error(path.string() + ": node " + std::to_string(i) +
                                     " does not match the grid");
        }
    }
    return std::move(table.values);
}

Json to_json(const Params& p)
{
    return Json{{"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"beta", p.beta}};
}

Params params_from_json(const Json& j)
{
    Params p;
    for (const auto& [key, value] : j.items()) {
        if (key == "lambda1") {
            p.lambda1 = value.get<double>();
        } else if (key == "lambda2") {
            p.lambda2 = value.get<double>();
        } else if (key == "beta") {
            p.beta = value.get<double>();
        } else {
            throw std::invalid_argument("params: unknown field '" + key + "'");
        }
    }
    return p;
}

Json to_json(const EnergyBreakdown& e)
{
    return Json{{"I1", e.I1}, {"I2", e.I2}, {"coupling", e.coupling}, {"phi", e.phi}};
}

Json to_json(const ThresholdReport& r)
{
    return Json{{"Lambda", r.lambda_extrapolated},
                {"Lambda_grid", r.lambda_threshold},
                {"lambda1", r.lambda1},
                {"lambda2", r.lambda2},
                {"n", r.grid_used.size()},
                {"L", r.grid_used.half_width()}};
}

Json to_json(const SaddleReport& r)
{
    return Json{{"Lambda", r.lambda_threshold},
                {"direction_value", r.direction_value},
                {"v2_direction_value", r.v2_direction_value},
                {"sampled_min", r.sampled_min},
                {"samples", r.samples},
                {"is_saddle", r.is_saddle}};
}

Json to_json(const SolveReport& r)
{
    return Json{{"phi", r.phi},
                {"F", r.F},
                {"residual_inf", r.residual_inf},
                {"psi_value", r.psi_value},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"positive", r.positive},
                {"even", r.even},
                {"message", r.message}};
}

void write_branch_csv(const std::filesystem::path& path, const std::vector<BranchPoint>& points)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "beta,phi,residual_inf,distance_to_u0\n";
    for (const auto& point : points) {
        out << format_double(point.beta) << ',' << format_double(point.report.phi) << ','
            << format_double(point.report.residual_inf) << ',' << format_double(point.distance_to_u0)
            << '\n';
    }
}

void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<EvolutionDiagnostics>& series)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "t,mass_f,mean_g,profile_error_f,profile_error_g\n";
    for (const auto& d : series) {
        out << format_double(d.t) << ',' << format_double(d.mass_f) << ',' << format_double(d.mean_g)
            << ',' << format_double(d.profile_error_f) << ',' << format_double(d.profile_error_g) << '\n';
    }
}

namespace {

// nlohmann emits the shortest round-trip form for doubles; outputs here use a
// fixed 17 significant digits instead, so the tree is serialized by hand.
void dump(const Json& j, std::ostream& out, int indent, int depth)
{
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out << ",\n";
            first = false;
            out << pad << Json(key).dump() << ": ";
            dump(value, out, indent, depth + 1);
        }
        out << '\n' << close_pad << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out << "[]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i > 0) out << ",\n";
            out << pad;
            dump(j[i], out, indent, depth + 1);
        }
        out << '\n' << close_pad << ']';
        return;
    }
    case Json::value_t::number_float: {
        const double value = j.get<double>();
        out << (std::isfinite(value) ? format_double(value) : std::string("null"));
        return;
    }
    default:
        out << j.dump();
    }
}

}  // namespace

std::string dump_json(const Json& j)
{
    std::ostringstream out;
    dump(j, out, 2, 0);
    out << '\n';
    return out.str();
}

void write_json(const std::filesystem::path& path, const Json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << dump_json(j);
}

}  // namespace nlskdv

#pragma once

// Projection onto the Nehari set {Psi = 0} and preconditioned descent of
// F = Phi|_N, producing ground-state candidates.

#include <stdexcept>
#include <string>
#include <vector>

#include "nlskdv/energy.hpp"

namespace nlskdv {

/// Raised when the ray through a state never meets the Nehari set.
class ProjectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolveReport {
    PairField profile;
    double phi = 0.0;
    double F = 0.0;
    double residual_inf = 0.0;
    double psi_value = 0.0;
    int iterations = 0;
    bool converged = false;
    bool positive = false;  // every node of both components > 0
    bool even = false;
    std::string message;
};

/// Fills the energy and flag fields of a report from its profile.
SolveReport evaluate_report(PairField profile, const Params& p, const Grid& g);

/// Coefficients of Psi(t w) = t^2 (A - t B - t^2 C).
struct RayCoefficients {
    double A;  // ||u||_1^2 + ||v||_2^2
    double B;  // 1/2 int v^3 + 3/2 beta int u^2 v
    double C;  // int u^4
};

RayCoefficients ray_coefficients(const PairField& w, const Params& p, const Grid& g);

/// Largest positive t with Psi(t w) = 0. Throws ProjectionError for w = 0 or
/// when C = 0 and B <= 0.
double nehari_scale(const PairField& w, const Params& p, const Grid& g);

PairField project(const PairField& w, const Params& p, const Grid& g);

struct DescentOptions {
    double tolerance = 1e-8;       // on residual_inf
    int max_iter = 5000;
    double armijo = 1e-4;
    double backtrack = 0.5;
    double initial_step = 1.0;
    int max_backtracks = 40;
    bool enforce_even = true;
    bool record_trace = false;
};

struct DescentResult {
    SolveReport report;
    std::vector<double> F_trace;  // accepted F values, when requested
};

DescentResult minimize_on_nehari(const PairField& w0, const Params& p, const Grid& g,
                                 const DescentOptions& opts = {});

struct GroundStateOptions {
    DescentOptions descent;
    double start_weight = 0.1;  // epsilon in the multistart set
    bool newton_polish = true;
};

struct GroundStateReport {
    SolveReport best;
    std::vector<SolveReport> candidates;  // every start, converged or not
    double phi_semitrivial_v2 = 0.0;       // Phi(0, V2)
    double phi_semitrivial_u1 = 0.0;       // Phi(U1, 0)
    bool below_semitrivial = false;        // two-component best with best.phi < min of the two
    double margin = 0.0;                   // min(semitrivial) - best.phi
};

/// Multistart from project(U1, eps V2), project(eps U1, V2), project(U1, V2);
/// each result is replaced by its absolute value, re-projected and polished
/// by Newton. The lowest-Phi converged candidate wins.
GroundStateReport ground_state(const Params& p, const Grid& g, const GroundStateOptions& opts = {});

}  // namespace nlskdv

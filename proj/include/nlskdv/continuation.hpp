#pragma once

// Newton polishing of bound states and continuation in the coupling beta
// starting from the decoupled pair (U1, V2).

#include <stdexcept>
#include <vector>

#include "nlskdv/nehari.hpp"

namespace nlskdv {

class NewtonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NewtonOptions {
    double tolerance = 1e-10;  // on residual_inf
    int max_iter = 25;
    bool record_history = false;
};

struct NewtonResult {
    SolveReport report;
    std::vector<double> residual_history;  // residual_inf before each update
};

/// Newton iteration for the stationary system restricted to even fields.
///
/// The linearization is assembled on the half grid x >= 0 with the mirror
/// condition at x = 0, so the odd translation mode never enters the solve.
/// Throws NewtonError for a zero start, a singular factorization or two
/// consecutive residual increases; a run that exhausts max_iter returns an
/// unconverged report.
NewtonResult newton_solve(const PairField& w0, const Params& p, const Grid& g,
                          const NewtonOptions& opts = {});

struct BranchPoint {
    double beta = 0.0;
    SolveReport report;
    double distance_to_u0 = 0.0;  // sup-norm gap to the beta = 0 grid solution
};

struct Branch {
    std::vector<BranchPoint> points;
    bool complete = false;
    double last_good_beta = 0.0;
    std::string message;
};

/// Raised when the first continuation step cannot be taken; carries the
/// partial branch (the beta = 0 point).
class ContinuationError : public std::runtime_error {
public:
    ContinuationError(const std::string& what, Branch partial)
        : std::runtime_error(what), partial_(std::move(partial))
    {
    }
    const Branch& partial() const noexcept { return partial_; }

private:
    Branch partial_;
};

struct ContinuationOptions {
    NewtonOptions newton;
    int max_halvings = 4;
};

/// The decoupled reference state: (U1, V2) polished by Newton at beta = 0.
PairField decoupled_solution(const Params& p, const Grid& g);

/// Marches beta through beta_target * k / steps, k = 1..steps, warm-starting
/// each Newton solve from the previous profile. A failed step is retried
/// with 2, 4, ... substeps. beta_target = 0 returns the single decoupled point.
Branch continue_in_beta(const Params& base, double beta_target, int steps, const Grid& g,
                        const ContinuationOptions& opts = {});

}  // namespace nlskdv

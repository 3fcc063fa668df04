#pragma once

// Coupling threshold Lambda = inf ||phi||_1^2 / int V2 phi^2 over even phi,
// and the saddle diagnostic of the semi-trivial state (0, V2).

#include <cstdint>
#include <random>
#include <stdexcept>

#include "nlskdv/energy.hpp"

namespace nlskdv {

class ThresholdError : public std::runtime_error {
public:
    ThresholdError(const std::string& what, double last_quotient)
        : std::runtime_error(what), last_quotient_(last_quotient)
    {
    }
    double last_quotient() const noexcept { return last_quotient_; }

private:
    double last_quotient_;
};

struct ThresholdOptions {
    double tolerance = 1e-12;  // relative change of the Rayleigh quotient
    int max_iter = 500;
    bool dense = false;        // full generalized eigendecomposition, n <= 1025 only
    bool extrapolate = true;   // also solve on 2n-1 nodes and Richardson-extrapolate
};

struct ThresholdReport {
    double lambda_threshold = 0.0;     // on grid_used
    double lambda_extrapolated = 0.0;  // (4 Lambda(h/2) - Lambda(h)) / 3, or the grid value
    RealField eigenfunction;  // even, positive, int V2 phi^2 = 1
    Grid grid_used{1.0, 3};
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    int iterations = 0;
};

/// Smallest Lambda with (-D^2 + lambda1) phi = Lambda V2 phi on the grid.
/// Inverse iteration from an even positive start; the dense path solves the
/// reversed pencil V2 phi = mu (-D^2 + lambda1) phi and returns 1 / mu_max.
ThresholdReport lambda_threshold(double lambda1, double lambda2, const Grid& g,
                                 const ThresholdOptions& opts = {});

/// ||phi||_1^2 / int V2 phi^2 for a nonzero field.
double threshold_quotient(std::span<const double> field, double lambda1,
                          std::span<const double> V2, const Grid& g);

/// (h1, h2) is tangent to the Nehari set at (0, V2) iff (V2|h2)_2 = 3/4 int V2^2 h2.
bool tangent_check(const PairField& h, double lambda2, const Grid& g);

/// Removes the normal component of h2 along V2 so that tangent_check passes.
RealField project_to_tangent(std::span<const double> h2, double lambda2, const Grid& g);

struct SaddleReport {
    double lambda_threshold = 0.0;
    double direction_value = 0.0;   // Phi''(0,V2) along (phi_Lambda, 0)
    double v2_direction_value = 0.0;  // Phi''(0,V2) along (V2, 0)
    double sampled_min = 0.0;       // min over random tangent directions
    int samples = 0;
    bool is_saddle = false;         // direction_value < 0
};

SaddleReport saddle_check(const Params& p, const Grid& g, std::uint64_t seed = 0, int samples = 50);

/// Smooth, even, randomly weighted sum of bumps that vanishes near +-L.
RealField random_even_field(const Grid& g, std::mt19937_64& rng);

}  // namespace nlskdv

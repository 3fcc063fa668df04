#pragma once

// Uniform symmetric grid on [-L, L], finite-difference operators, trapezoid
// quadrature and the weighted H^1 norms used by the energy functionals.

#include <cstddef>
#include <span>
#include <vector>

namespace nlskdv {

/// Nodal values of a real scalar field.
using RealField = std::vector<double>;

/// Uniform node set x_i = -L + i*h, i = 0..n-1, with h = 2L/(n-1).
///
/// n is odd so x = 0 is a node; x_i = -x_{n-1-i} holds exactly.
class Grid {
public:
    Grid(double half_width, std::size_t n);

    double half_width() const noexcept { return L_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    std::size_t center() const noexcept { return (n_ - 1) / 2; }

    double x(std::size_t i) const noexcept;
    const std::vector<double>& nodes() const noexcept { return x_; }

    bool operator==(const Grid& other) const noexcept
    {
        return n_ == other.n_ && L_ == other.L_;
    }

private:
    double L_;
    std::size_t n_;
    double h_;
    std::vector<double> x_;
};

/// Throws std::invalid_argument for even n, n < 3 or L <= 0. Production runs
/// use n >= 16; smaller odd n is accepted for hand-checkable layouts.
Grid make_grid(double half_width, std::size_t n);

/// Default box half-width 40/sqrt(min(lambda1, lambda2, 1)).
double default_half_width(double lambda1, double lambda2);
inline constexpr std::size_t kDefaultNodes = 4097;

struct PairField {
    RealField u;
    RealField v;
};

/// Central second difference with zero ghost values beyond +-L.
RealField second_derivative(std::span<const double> w, const Grid& g);

/// Trapezoid rule over [-L, L].
double integrate(std::span<const double> w, const Grid& g);

/// Sum over all grid links (including the two links to the zero ghosts) of
/// (w_{i+1} - w_i)^2 / h. Approximates int (w')^2 to second order, and its
/// gradient is exactly 2h * (-D^2 w).
double dirichlet_energy(std::span<const double> w, const Grid& g);
double dirichlet_product(std::span<const double> a, std::span<const double> b, const Grid& g);

/// ||w||_j^2 = int (w')^2 + lambda_j int w^2. Throws for lambda_j <= 0.
double norm_j_sq(std::span<const double> w, double lambda_j, const Grid& g);

/// (a|b)_j = int a' b' + lambda_j int a b. Throws for lambda_j <= 0.
double inner_j(std::span<const double> a, std::span<const double> b, double lambda_j,
               const Grid& g);

/// Solves (-D^2 + shift) y = rhs with the Dirichlet stencil (tridiagonal).
RealField solve_shifted_laplacian(std::span<const double> rhs, double shift, const Grid& g);

/// Mirror average w_i <- (w_i + w_{n-1-i}) / 2, exact evenness.
void symmetrize(RealField& w);
double evenness_defect(std::span<const double> w);

double max_abs(std::span<const double> w);
double min_value(std::span<const double> w);

// Pointwise helpers on fields of equal length.
RealField axpy(double a, std::span<const double> x, std::span<const double> y);  // a*x + y
RealField scaled(double a, std::span<const double> x);
PairField axpy(double a, const PairField& x, const PairField& y);
PairField scaled(double a, const PairField& x);
double max_abs(const PairField& w);

}  // namespace nlskdv

#include "nlskdv/grid.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nlskdv {

Grid::Grid(double half_width, std::size_t n) : L_(half_width), n_(n)
{
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("grid: half-width L must be positive, got " +
                                    std::to_string(half_width));
    }
    if (n < 3 || n % 2 == 0) {
        throw std::invalid_argument("grid: node count n must be odd and >= 3, got " +
                                    std::to_string(n));
    }
    h_ = 2.0 * L_ / static_cast<double>(n_ - 1);
    x_.resize(n_);
    const auto m = static_cast<std::ptrdiff_t>(center());
    // Offsets from the center node so that mirrored nodes are exact negatives.
    for (std::size_t i = 0; i < n_; ++i) {
        x_[i] = static_cast<double>(static_cast<std::ptrdiff_t>(i) - m) * h_;
    }
    x_.front() = -L_;
    x_.back() = L_;
}

double Grid::x(std::size_t i) const noexcept
{
    assert(i < n_);
    return x_[i];
}

Grid make_grid(double half_width, std::size_t n) { return Grid(half_width, n); }

double default_half_width(double lambda1, double lambda2)
{
    return 40.0 / std::sqrt(std::min({lambda1, lambda2, 1.0}));
}

RealField second_derivative(std::span<const double> w, const Grid& g)
{
    const std::size_t n = w.size();
    assert(n == g.size());
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    RealField out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double left = i > 0 ? w[i - 1] : 0.0;
        const double right = i + 1 < n ? w[i + 1] : 0.0;
        out[i] = (left - 2.0 * w[i] + right) * inv_h2;
    }
    return out;
}

double integrate(std::span<const double> w, const Grid& g)
{
    assert(w.size() == g.size());
    double sum = 0.0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) sum += w[i];
    sum += 0.5 * (w.front() + w.back());
    return sum * g.spacing();
}

double dirichlet_product(std::span<const double> a, std::span<const double> b, const Grid& g)
{
    assert(a.size() == g.size() && b.size() == g.size());
    const std::size_t n = a.size();
    // Links (-1,0) and (n-1,n) connect to the zero ghosts.
    double sum = a.front() * b.front() + a.back() * b.back();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        sum += (a[i + 1] - a[i]) * (b[i + 1] - b[i]);
    }
    return sum / g.spacing();
}

double dirichlet_energy(std::span<const double> w, const Grid& g)
{
    return dirichlet_product(w, w, g);
}

namespace {

void require_positive_lambda(double lambda_j)
{
    if (!(lambda_j > 0.0)) {
        throw std::invalid_argument("norm weight lambda_j must be positive, got " +
                                    std::to_string(lambda_j));
    }
}

double weighted_product(std::span<const double> a, std::span<const double> b, const Grid& g)
{
    RealField ab(a.size());
    std::transform(a.begin(), a.end(), b.begin(), ab.begin(), std::multiplies<>());
    return integrate(ab, g);
}

}  // namespace

double norm_j_sq(std::span<const double> w, double lambda_j, const Grid& g)
{
    require_positive_lambda(lambda_j);
    return dirichlet_energy(w, g) + lambda_j * weighted_product(w, w, g);
}

double inner_j(std::span<const double> a, std::span<const double> b, double lambda_j,
               const Grid& g)
{
    require_positive_lambda(lambda_j);
    if (a.size() != b.size()) throw std::invalid_argument("inner_j: field length mismatch");
    return dirichlet_product(a, b, g) + lambda_j * weighted_product(a, b, g);
}

RealField solve_shifted_laplacian(std::span<const double> rhs, double shift, const Grid& g)
{
    const std::size_t n = rhs.size();
    assert(n == g.size());
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const double off = -inv_h2;
    const double diag = 2.0 * inv_h2 + shift;

    // Thomas algorithm; the matrix is diagonally dominant for shift > 0.
    std::vector<double> c_prime(n);
    RealField y(rhs.begin(), rhs.end());
    double denom = diag;
    c_prime[0] = off / denom;
    y[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
        denom = diag - off * c_prime[i - 1];
        c_prime[i] = off / denom;
        y[i] = (y[i] - off * y[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        y[i] -= c_prime[i] * y[i + 1];
    }
    return y;
}

void symmetrize(RealField& w)
{
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double avg = 0.5 * (w[i] + w[n - 1 - i]);
        w[i] = avg;
        w[n - 1 - i] = avg;
    }
}

double evenness_defect(std::span<const double> w)
{
    const std::size_t n = w.size();
    double defect = 0.0;
    for (std::size_t i = 0; i < n / 2; ++i) {
        defect = std::max(defect, std::abs(w[i] - w[n - 1 - i]));
    }
    return defect;
}

double max_abs(std::span<const double> w)
{
    double m = 0.0;
    for (double value : w) m = std::max(m, std::abs(value));
    return m;
}

double min_value(std::span<const double> w)
{
    return w.empty() ? 0.0 : *std::min_element(w.begin(), w.end());
}

RealField axpy(double a, std::span<const double> x, std::span<const double> y)
{
    assert(x.size() == y.size());
    RealField out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + y[i];
    return out;
}

RealField scaled(double a, std::span<const double> x)
{
    RealField out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i];
    return out;
}

PairField axpy(double a, const PairField& x, const PairField& y)
{
    return {axpy(a, x.u, y.u), axpy(a, x.v, y.v)};
}

PairField scaled(double a, const PairField& x) { return {scaled(a, x.u), scaled(a, x.v)}; }

double max_abs(const PairField& w) { return std::max(max_abs(w.u), max_abs(w.v)); }

}  // namespace nlskdv

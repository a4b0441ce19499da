#pragma once

// Exponent equations for the lower and upper LIS bounds.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ultralis {

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RootMethod { Bisection, Newton };

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  // f(root)
    double lo = 0.0;        // final bracket
    double hi = 0.0;
    std::size_t iterations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]; nodes are interior, so
/// endpoint singularities are never evaluated. Throws ConvergenceError if
/// the error estimate stays above tol * |integral|.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);

/// (2 - 2^{-beta-1}) / (beta + 1), for beta > -1.
double c_beta(double beta);
/// The same constant from its defining integrals, by quadrature.
double c_beta_quadrature(double beta, double tol);

/// Root of x + 2^{-1-x} = 1 in [0, 1].
RootResult solve_beta0(double tol, RootMethod method = RootMethod::Bisection);
/// Root of c_beta = 1 in [0, 1]; same number as solve_beta0.
RootResult solve_c_beta_unit(double tol, RootMethod method = RootMethod::Bisection);

/// 2/(1+beta) - integral over [0, 1/2] of x^b (1-x)^b / (x^b + (1-x)^b).
double upper_functional(double beta, double quad_tol);
/// Root of upper_functional = 1 in (0, 1].
RootResult solve_beta1(double tol, double quad_tol, RootMethod method = RootMethod::Bisection);

/// Iterates the lower-bound recursion as an equality from l_1 = 1; entry 0
/// is unused. For even n the k = n/2 term carries weight 1/2.
std::vector<double> iterate_lower_recursion(std::size_t n_max);

}  // namespace ultralis

// Small numeric toolbox: adaptive quadrature, bracketed root finding,
// golden-section maximization.
#pragma once

#include <functional>

namespace sellback::numeric {

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance
// abs_tol. Handles a > b by sign flip. The integrand must be finite on
// the closed interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-8);

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Brent's method on [a, b]; requires f(a) and f(b) of opposite sign.
// Stops when the bracket shrinks below x_tol (plus machine slack) or the
// residual magnitude drops below f_tol.
RootResult find_root(const std::function<double(double)>& f, double a, double b,
                     double x_tol = 1e-12, double f_tol = 0.0,
                     int max_iterations = 200);

// Golden-section search for the maximizer of f on [a, b] (f unimodal there).
double maximize(const std::function<double(double)>& f, double a, double b,
                double x_tol = 1e-12);

}  // namespace sellback::numeric

#pragma once

#include <functional>

namespace phrmt {

using ScalarFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
double integrate(const ScalarFunction& f, double a, double b, double abs_tol = 1e-14,
                 double rel_tol = 1e-13);

/// Integral of f over [a, inf) via the map x = a + t / (1 - t).
double integrate_to_infinity(const ScalarFunction& f, double a, double abs_tol = 1e-14,
                             double rel_tol = 1e-13);

}  // namespace phrmt

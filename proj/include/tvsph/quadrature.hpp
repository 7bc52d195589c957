#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tvsph {

struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
};

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

// Integral of f over [a, b] where f may have integrable 1/sqrt singularities
// at both endpoints: substitutes x = a + u^2 resp. x = b - u^2 on each half.
double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a,
                                double b, double tol);

// Deterministic pairwise (binary tree) summation; independent of how the
// values were produced or partitioned.
double pairwise_sum(std::span<const double> values);

}  // namespace tvsph
